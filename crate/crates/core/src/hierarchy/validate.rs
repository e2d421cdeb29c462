use std::collections::BTreeSet;

use super::{dag, Hierarchy, NodeKind, SourceRef};
use crate::kg::{Eg, Etg};
use crate::report::{FindingKind, ValidationReport};

/// Checks acyclicity, rootedness, transitive reducedness and that every
/// node's source reference agrees with its kind.
pub fn validate_hierarchy(h: &Hierarchy) -> ValidationReport {
    let mut report = ValidationReport::new();
    for n in h.nodes() {
        if !n.ref_matches_kind() {
            report.push(
                FindingKind::UnknownReference,
                &n.id,
                "source reference does not match node kind",
            );
        }
        if n.kind == NodeKind::Root && n.id != h.root() {
            report.push(FindingKind::Rootedness, &n.id, "second root node");
        }
    }
    if let Some(cycle) = h.find_cycle() {
        report.push(FindingKind::Cycle, &cycle[0], format!("cycle {}", cycle.join(" -> ")));
        return report;
    }
    if h.has_parent(h.root()) {
        report.push(FindingKind::Rootedness, h.root(), "root has a parent");
    }
    let (ids, edges) = h.indexed();
    let adj = dag::Adjacency::new(ids.len(), &edges);
    let reach = dag::reachability(&adj).unwrap_or_default();
    let root_ix = ids.iter().position(|id| *id == h.root());
    for (i, id) in ids.iter().enumerate() {
        if Some(i) == root_ix {
            continue;
        }
        if adj.out[i].is_empty() {
            report.push(FindingKind::Rootedness, *id, "node has no parent");
        } else if root_ix.is_some_and(|r| !reach[i].contains(r)) {
            report.push(FindingKind::Rootedness, *id, "root is not reachable");
        }
    }
    let kept: BTreeSet<(usize, usize)> = dag::transitive_reduction(ids.len(), &edges)
        .unwrap_or_default()
        .into_iter()
        .collect();
    for &(c, p) in &edges {
        if !kept.contains(&(c, p)) {
            report.push(
                FindingKind::Reducedness,
                format!("{} -> {}", ids[c], ids[p]),
                "edge is implied by a longer path",
            );
        }
    }
    report
}

/// [`validate_hierarchy`] plus resolution of every source reference against
/// the graphs the hierarchy was compiled from.
pub fn validate_hierarchy_sources(h: &Hierarchy, etg: &Etg, eg: &Eg) -> ValidationReport {
    let mut report = validate_hierarchy(h);
    for n in h.nodes() {
        let ok = match &n.source_ref {
            None => true,
            Some(SourceRef::Etype(id)) => etg.etype(id).is_some(),
            Some(SourceRef::Entity(id)) => eg.entity(id).is_some(),
            Some(SourceRef::Property(id)) => etg.property(id).is_some(),
            Some(SourceRef::Triple(t)) => {
                etg.property(&t.property).is_some() && eg.entity(&t.subject).is_some() && eg.entity(&t.object).is_some()
            }
        };
        if !ok {
            report.push(
                FindingKind::UnknownReference,
                &n.id,
                "source reference does not resolve",
            );
        }
    }
    report
}
