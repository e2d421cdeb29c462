//! Indicator vectors over a compiled hierarchy.
//!
//! A vector is consistent when it is upward closed: for every edge
//! child -> parent, a set child bit implies a set parent bit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::hierarchy::{entity_id, pinst_id, property_id, Hierarchy};
use crate::kg::{Eg, Etg};
use crate::report::{FindingKind, ValidationReport};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("label vector has {got} bits, hierarchy has {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },
    #[error("hierarchy is cyclic")]
    Cyclic,
}

/// Index space of a hierarchy: the published node order plus edges as
/// index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSpace {
    order: Vec<String>,
    index: BTreeMap<String, usize>,
    parents: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    root: Option<usize>,
}

impl LabelSpace {
    pub fn new(h: &Hierarchy) -> Result<Self, LabelError> {
        let order = h.node_order().ok_or(LabelError::Cyclic)?;
        let index: BTreeMap<String, usize> = order.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        let mut parents = vec![Vec::new(); order.len()];
        let mut edges = Vec::with_capacity(h.edge_count());
        for (c, p) in h.edges() {
            let (ci, pi) = (index[c], index[p]);
            parents[ci].push(pi);
            edges.push((ci, pi));
        }
        let root = index.get(h.root()).copied();
        Ok(LabelSpace {
            order,
            index,
            parents,
            edges,
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Node ids in vector order.
    pub fn order(&self) -> &[String] {
        &self.order
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Position of the hierarchy root.
    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn zeros(&self) -> LabelVector {
        LabelVector::zeros(self.len())
    }

    fn check_len(&self, y: &LabelVector) -> Result<(), LabelError> {
        if y.len() == self.len() {
            Ok(())
        } else {
            Err(LabelError::LengthMismatch {
                expected: self.len(),
                got: y.len(),
            })
        }
    }
}

/// A {0,1} vector indexed by a [`LabelSpace`]. Serializes as a JSON array of
/// 0/1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelVector {
    bits: Vec<bool>,
}

impl LabelVector {
    pub fn zeros(n: usize) -> Self {
        LabelVector { bits: vec![false; n] }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        LabelVector { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.bits[i] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    /// Bitwise `self <= other`.
    pub fn is_subset(&self, other: &LabelVector) -> bool {
        self.bits.len() == other.bits.len() && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    /// Node ids of the set bits.
    pub fn set_ids<'a>(&'a self, space: &'a LabelSpace) -> impl Iterator<Item = &'a str> + 'a {
        self.ones().map(|i| space.order[i].as_str())
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            f.write_str(if *b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for LabelVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.bits.iter().map(|b| u8::from(*b)))
    }
}

impl<'de> Deserialize<'de> for LabelVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Vec::<u8>::deserialize(deserializer)?;
        let bits = raw
            .into_iter()
            .map(|b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(serde::de::Error::custom(format!(
                    "label bit must be 0 or 1, got {other}"
                ))),
            })
            .collect::<Result<_, _>>()?;
        Ok(LabelVector { bits })
    }
}

/// An edge whose child bit is set while its parent bit is not.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConsistencyViolation {
    pub child: String,
    pub parent: String,
}

pub fn check_consistency(space: &LabelSpace, y: &LabelVector) -> Result<Vec<ConsistencyViolation>, LabelError> {
    space.check_len(y)?;
    Ok(space
        .edges
        .iter()
        .filter(|(c, p)| y.get(*c) && !y.get(*p))
        .map(|(c, p)| ConsistencyViolation {
            child: space.order[*c].clone(),
            parent: space.order[*p].clone(),
        })
        .collect())
}

pub fn is_consistent(space: &LabelSpace, y: &LabelVector) -> bool {
    check_consistency(space, y).is_ok_and(|v| v.is_empty())
}

/// Smallest consistent superset of `y`: every set bit pulls in its ancestors.
pub fn repair_upward(space: &LabelSpace, y: &LabelVector) -> Result<LabelVector, LabelError> {
    space.check_len(y)?;
    let mut out = y.clone();
    // children come after their parents in the order, so a reverse sweep
    // sees every descendant before its ancestors
    for i in (0..space.len()).rev() {
        if out.get(i) {
            for &p in &space.parents[i] {
                out.set(p, true);
            }
        }
    }
    Ok(out)
}

/// Largest consistent subset of `y`: a bit survives only if all of its
/// ancestors are set.
pub fn repair_downward(space: &LabelSpace, y: &LabelVector) -> Result<LabelVector, LabelError> {
    space.check_len(y)?;
    let mut out = y.clone();
    for i in 0..space.len() {
        if out.get(i) && space.parents[i].iter().any(|&p| !out.get(p)) {
            out.set(i, false);
        }
    }
    Ok(out)
}

/// Labels of an entity graph snapshot.
///
/// Entities that take part in a context-dependent triple and property
/// instances whose triple is present are set, then the vector is closed
/// upwards. Facts without a node in the hierarchy are reported as warnings
/// (the observer and properties left out of compilation are skipped).
pub fn labels_from_eg(space: &LabelSpace, h: &Hierarchy, etg: &Etg, snapshot: &Eg) -> (LabelVector, ValidationReport) {
    let mut report = ValidationReport::new();
    let mut y = space.zeros();
    let observers: BTreeSet<&str> = snapshot.observers(etg).map(|e| e.id.as_str()).collect();
    let mut active: BTreeSet<&str> = BTreeSet::new();
    for t in &snapshot.triples {
        let Some(p) = etg.property(&t.property) else { continue };
        if p.context_dependent {
            active.insert(&t.subject);
            active.insert(&t.object);
        }
        if h.node(&property_id(&p.id)).is_some() {
            match space.position(&pinst_id(t)) {
                Some(i) => y.set(i, true),
                None => report.push(
                    FindingKind::Warning,
                    t.to_string(),
                    "no property instance node in the hierarchy",
                ),
            }
        }
    }
    for id in active.into_iter().filter(|id| !observers.contains(id)) {
        match space.position(&entity_id(id)) {
            Some(i) => y.set(i, true),
            None => report.push(FindingKind::Warning, id, "entity has no node in the hierarchy"),
        }
    }
    let y = repair_upward(space, &y).expect("vector built from the same space");
    (y, report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::{ConceptNode, Hierarchy};

    // a, d under root; b under both a and d; c under b
    fn diamond() -> Hierarchy {
        let nodes = ["a", "b", "c", "d"].map(|id| ConceptNode::etype(id, id));
        let edges = [
            ("etype:a", "root"),
            ("etype:d", "root"),
            ("etype:b", "etype:a"),
            ("etype:b", "etype:d"),
            ("etype:c", "etype:b"),
        ]
        .map(|(c, p)| (c.to_string(), p.to_string()));
        Hierarchy::from_parts(std::iter::once(ConceptNode::root()).chain(nodes), edges, "root").unwrap()
    }

    fn vector(space: &LabelSpace, ids: &[&str]) -> LabelVector {
        let mut y = space.zeros();
        for id in ids {
            y.set(space.position(id).unwrap(), true);
        }
        y
    }

    #[test]
    fn order_is_parents_first_with_id_ties() {
        let space = LabelSpace::new(&diamond()).unwrap();
        assert_eq!(space.order(), ["root", "etype:a", "etype:d", "etype:b", "etype:c"]);
    }

    #[test]
    fn trivially_consistent_vectors() {
        let space = LabelSpace::new(&diamond()).unwrap();
        assert!(check_consistency(&space, &space.zeros()).unwrap().is_empty());
        let ones = LabelVector::from_bits(vec![true; space.len()]);
        assert!(check_consistency(&space, &ones).unwrap().is_empty());
    }

    #[test]
    fn single_violation_reported() {
        let space = LabelSpace::new(&diamond()).unwrap();
        let y = vector(&space, &["root", "etype:a", "etype:b"]);
        assert_eq!(
            check_consistency(&space, &y).unwrap(),
            vec![ConsistencyViolation {
                child: "etype:b".into(),
                parent: "etype:d".into()
            }]
        );
    }

    #[test]
    fn upward_adds_all_ancestors() {
        let space = LabelSpace::new(&diamond()).unwrap();
        let y = vector(&space, &["etype:c"]);
        let up = repair_upward(&space, &y).unwrap();
        assert_eq!(up, LabelVector::from_bits(vec![true; 5]));
        assert_eq!(repair_upward(&space, &up).unwrap(), up);
        assert_eq!(repair_upward(&space, &space.zeros()).unwrap(), space.zeros());
    }

    #[test]
    fn downward_clears_unsupported_bits() {
        let space = LabelSpace::new(&diamond()).unwrap();
        let y = vector(&space, &["root", "etype:a", "etype:b", "etype:c"]);
        let down = repair_downward(&space, &y).unwrap();
        assert_eq!(down, vector(&space, &["root", "etype:a"]));
        let consistent = vector(&space, &["root", "etype:d"]);
        assert_eq!(repair_downward(&space, &consistent).unwrap(), consistent);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let space = LabelSpace::new(&diamond()).unwrap();
        let y = LabelVector::zeros(2);
        assert_eq!(
            check_consistency(&space, &y),
            Err(LabelError::LengthMismatch { expected: 5, got: 2 })
        );
        assert!(repair_upward(&space, &y).is_err());
        assert!(repair_downward(&space, &y).is_err());
    }

    #[test]
    fn json_is_zero_one_array() {
        let y = LabelVector::from_bits(vec![true, false, true]);
        assert_eq!(serde_json::to_string(&y).unwrap(), "[1,0,1]");
        assert!(serde_json::from_str::<LabelVector>("[1,2]").is_err());
    }
}
