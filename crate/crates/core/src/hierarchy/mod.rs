//! Compilation of an entity type graph and entity graph into a rooted,
//! transitively reduced concept hierarchy.

mod compile;
pub mod dag;
mod display;
mod dot;
mod graph;
mod node;
mod validate;

pub use compile::{compile, compile_with, CompileOptions};
pub use display::node_display_name;
pub use dot::to_dot;
pub use graph::{Hierarchy, HierarchyDoc};
pub use node::{
    entity_id, etype_id, pinst_id, property_id, ConceptNode, Family, NodeKind, SourceRef, ROOT_ID, ROOT_NAME,
};
pub use validate::{validate_hierarchy, validate_hierarchy_sources};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::report::ValidationReport;

#[derive(Debug, Error, PartialEq)]
pub enum HierarchyError {
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("input graphs are invalid:\n{0}")]
    InvalidInput(ValidationReport),
    #[error("dangling source reference in `{0}`")]
    DanglingRef(String),
}

/// Returns `h` with the unique minimal edge set that preserves reachability.
pub fn transitive_reduction(h: &Hierarchy) -> Result<Hierarchy, HierarchyError> {
    let (ids, edges) = h.indexed();
    let kept = dag::transitive_reduction(ids.len(), &edges)
        .map_err(|cycle| HierarchyError::Cycle(cycle.into_iter().map(|i| ids[i].to_string()).collect()))?;
    let kept: BTreeSet<(String, String)> = kept
        .into_iter()
        .map(|(c, p)| (ids[c].to_string(), ids[p].to_string()))
        .collect();
    let mut out = h.clone();
    out.replace_edges(kept);
    Ok(out)
}
