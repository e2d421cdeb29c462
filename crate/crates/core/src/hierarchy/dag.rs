//! Index-based DAG algorithms over child -> parent edge lists.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use fixedbitset::FixedBitSet;

/// Adjacency of a graph on `0..n`, deduplicated and sorted.
#[derive(Debug, Clone)]
pub struct Adjacency {
    pub out: Vec<Vec<usize>>,
    pub inc: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let set: BTreeSet<(usize, usize)> = edges.iter().copied().collect();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (a, b) in set {
            out[a].push(b);
            inc[b].push(a);
        }
        Adjacency { out, inc }
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }
}

/// A directed cycle, listed as a closed walk (first == last).
pub fn find_cycle(adj: &Adjacency) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = adj.len();
    let mut mark = vec![Mark::New; n];
    for start in 0..n {
        if mark[start] != Mark::New {
            continue;
        }
        // iterative DFS: (node, next successor position)
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        mark[start] = Mark::Active;
        while let Some(&mut (node, ref mut pos)) = stack.last_mut() {
            if *pos < adj.out[node].len() {
                let next = adj.out[node][*pos];
                *pos += 1;
                match mark[next] {
                    Mark::New => {
                        mark[next] = Mark::Active;
                        stack.push((next, 0));
                    }
                    Mark::Active => {
                        let from = stack.iter().position(|(v, _)| *v == next).unwrap_or(0);
                        let mut cycle: Vec<usize> = stack[from..].iter().map(|(v, _)| *v).collect();
                        cycle.push(next);
                        return Some(cycle);
                    }
                    Mark::Done => {}
                }
            } else {
                mark[node] = Mark::Done;
                stack.pop();
            }
        }
    }
    None
}

/// Orders nodes so that every edge target (parent) precedes its source
/// (child). Ties are broken by `key`, smallest first. Returns `None` when the
/// graph has a cycle.
pub fn parents_first_order<K: Ord>(adj: &Adjacency, key: impl Fn(usize) -> K) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut pending: Vec<usize> = adj.out.iter().map(Vec::len).collect();
    let mut ready: BinaryHeap<Reverse<(K, usize)>> = (0..n)
        .filter(|&v| pending[v] == 0)
        .map(|v| Reverse((key(v), v)))
        .collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse((_, v))) = ready.pop() {
        order.push(v);
        for &child in &adj.inc[v] {
            pending[child] -= 1;
            if pending[child] == 0 {
                ready.push(Reverse((key(child), child)));
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Strict descendants (along edge direction) of every node. Requires a DAG.
pub fn reachability(adj: &Adjacency) -> Option<Vec<FixedBitSet>> {
    let n = adj.len();
    // parents-first order puts every successor before its predecessors
    let order = parents_first_order(adj, |v| v)?;
    let mut reach = vec![FixedBitSet::with_capacity(n); n];
    for &v in &order {
        let mut acc = FixedBitSet::with_capacity(n);
        for &w in &adj.out[v] {
            acc.insert(w);
            acc.union_with(&reach[w]);
        }
        reach[v] = acc;
    }
    Some(reach)
}

/// The unique minimal edge set with the same reachability as `edges`.
/// Fails with a witness cycle when the graph is not acyclic.
pub fn transitive_reduction(n: usize, edges: &[(usize, usize)]) -> Result<Vec<(usize, usize)>, Vec<usize>> {
    let adj = Adjacency::new(n, edges);
    let Some(reach) = reachability(&adj) else {
        return Err(find_cycle(&adj).unwrap_or_default());
    };
    let mut kept = Vec::new();
    for u in 0..n {
        let mut via_others = FixedBitSet::with_capacity(n);
        for &w in &adj.out[u] {
            via_others.union_with(&reach[w]);
        }
        for &v in &adj.out[u] {
            if !via_others.contains(v) {
                kept.push((u, v));
            }
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_shortcut_removed() {
        // a=0 -> b=1 -> c=2 plus a -> c
        let out = transitive_reduction(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(out, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycle_has_witness() {
        let err = transitive_reduction(3, &[(0, 1), (1, 2), (2, 0)]).unwrap_err();
        assert_eq!(err.first(), err.last());
        assert_eq!(err.len(), 4);
        let err = transitive_reduction(1, &[(0, 0)]).unwrap_err();
        assert_eq!(err, vec![0, 0]);
    }

    #[test]
    fn parents_first_with_ties() {
        // 2 and 1 both children of 0
        let adj = Adjacency::new(3, &[(2, 0), (1, 0)]);
        assert_eq!(parents_first_order(&adj, |v| v).unwrap(), vec![0, 1, 2]);
        assert_eq!(parents_first_order(&adj, Reverse).unwrap(), vec![0, 2, 1]);
    }
}
