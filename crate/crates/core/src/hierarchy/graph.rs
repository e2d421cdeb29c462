use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::dag::{self, Adjacency};
use super::node::ConceptNode;
use super::HierarchyError;

/// Concept DAG with child -> parent (is-a) edges and a designated root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hierarchy {
    nodes: BTreeMap<String, ConceptNode>,
    edges: BTreeSet<(String, String)>,
    root: String,
}

impl Hierarchy {
    pub fn new(root: ConceptNode) -> Self {
        let id = root.id.clone();
        Hierarchy {
            nodes: BTreeMap::from([(id.clone(), root)]),
            edges: BTreeSet::new(),
            root: id,
        }
    }

    /// Assembles a hierarchy from parts, checking that the root and every edge
    /// endpoint exist. No DAG properties are checked.
    pub fn from_parts(
        nodes: impl IntoIterator<Item = ConceptNode>,
        edges: impl IntoIterator<Item = (String, String)>,
        root: impl Into<String>,
    ) -> Result<Self, HierarchyError> {
        let mut map = BTreeMap::new();
        for n in nodes {
            if map.contains_key(&n.id) {
                return Err(HierarchyError::DuplicateNode(n.id));
            }
            map.insert(n.id.clone(), n);
        }
        let root = root.into();
        if !map.contains_key(&root) {
            return Err(HierarchyError::UnknownNode(root));
        }
        let mut h = Hierarchy {
            nodes: map,
            edges: BTreeSet::new(),
            root,
        };
        for (c, p) in edges {
            h.add_edge(&c, &p)?;
        }
        Ok(h)
    }

    /// Inserts a node, keeping an existing node with the same id.
    pub fn add_node(&mut self, node: ConceptNode) -> bool {
        if self.nodes.contains_key(&node.id) {
            return false;
        }
        self.nodes.insert(node.id.clone(), node);
        true
    }

    pub fn add_edge(&mut self, child: &str, parent: &str) -> Result<(), HierarchyError> {
        for id in [child, parent] {
            if !self.nodes.contains_key(id) {
                return Err(HierarchyError::UnknownNode(id.to_string()));
            }
        }
        self.edges.insert((child.to_string(), parent.to_string()));
        Ok(())
    }

    pub fn remove_edge(&mut self, child: &str, parent: &str) -> bool {
        self.edges.remove(&(child.to_string(), parent.to_string()))
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn node(&self, id: &str) -> Option<&ConceptNode> {
        self.nodes.get(id)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &ConceptNode> {
        self.nodes.values()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.keys().map(String::as_str)
    }

    pub fn edges(&self) -> &BTreeSet<(String, String)> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, child: &str, parent: &str) -> bool {
        self.edges.contains(&(child.to_string(), parent.to_string()))
    }

    pub fn parents<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.edges.iter().filter(move |(c, _)| c == id).map(|(_, p)| p.as_str())
    }

    pub fn has_parent(&self, id: &str) -> bool {
        self.parents(id).next().is_some()
    }

    /// Index view: node ids in id order and edges as index pairs.
    pub(crate) fn indexed(&self) -> (Vec<&str>, Vec<(usize, usize)>) {
        let ids: Vec<&str> = self.nodes.keys().map(String::as_str).collect();
        let pos: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, id)| (*id, i)).collect();
        let edges = self
            .edges
            .iter()
            .map(|(c, p)| (pos[c.as_str()], pos[p.as_str()]))
            .collect();
        (ids, edges)
    }

    pub(crate) fn adjacency(&self) -> (Vec<&str>, Adjacency) {
        let (ids, edges) = self.indexed();
        let adj = Adjacency::new(ids.len(), &edges);
        (ids, adj)
    }

    /// A cycle among the edges, as a closed walk of node ids.
    pub fn find_cycle(&self) -> Option<Vec<String>> {
        let (ids, adj) = self.adjacency();
        dag::find_cycle(&adj).map(|c| c.into_iter().map(|i| ids[i].to_string()).collect())
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Published node ordering for label vectors: topological with parents
    /// before children, ties broken by node id. `None` for cyclic graphs.
    pub fn node_order(&self) -> Option<Vec<String>> {
        let (ids, adj) = self.adjacency();
        let order = dag::parents_first_order(&adj, |v| v)?;
        Some(order.into_iter().map(|i| ids[i].to_string()).collect())
    }

    /// Set of (descendant, ancestor) pairs, `None` for cyclic graphs.
    pub fn reachable_pairs(&self) -> Option<BTreeSet<(String, String)>> {
        let (ids, adj) = self.adjacency();
        let reach = dag::reachability(&adj)?;
        let mut out = BTreeSet::new();
        for (u, set) in reach.iter().enumerate() {
            for v in set.ones() {
                out.insert((ids[u].to_string(), ids[v].to_string()));
            }
        }
        Some(out)
    }

    pub(crate) fn replace_edges(&mut self, edges: BTreeSet<(String, String)>) {
        self.edges = edges;
    }
}

/// JSON shape of a hierarchy: nodes in label order, edges as `[child, parent]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyDoc {
    pub root: String,
    pub nodes: Vec<ConceptNode>,
    pub edges: Vec<(String, String)>,
}

impl From<&Hierarchy> for HierarchyDoc {
    fn from(h: &Hierarchy) -> Self {
        let order = h.node_order().unwrap_or_else(|| h.nodes.keys().cloned().collect());
        HierarchyDoc {
            root: h.root.clone(),
            nodes: order.iter().map(|id| h.nodes[id].clone()).collect(),
            edges: h.edges.iter().cloned().collect(),
        }
    }
}

impl TryFrom<HierarchyDoc> for Hierarchy {
    type Error = HierarchyError;

    fn try_from(doc: HierarchyDoc) -> Result<Self, Self::Error> {
        Hierarchy::from_parts(doc.nodes, doc.edges, doc.root)
    }
}
