use super::{ConceptNode, HierarchyError, SourceRef, ROOT_NAME};
use crate::kg::{Eg, Etg};

/// Human-readable name of a node, resolved against the source graphs:
/// type, entity or property name, `name(subject, object)` for property
/// instances and `context` for the root.
pub fn node_display_name(node: &ConceptNode, etg: &Etg, eg: &Eg) -> Result<String, HierarchyError> {
    let dangling = || HierarchyError::DanglingRef(node.id.clone());
    match &node.source_ref {
        None => Ok(ROOT_NAME.to_string()),
        Some(SourceRef::Etype(id)) => etg.etype(id).map(|e| e.name.clone()).ok_or_else(dangling),
        Some(SourceRef::Entity(id)) => eg.entity(id).map(|e| e.name.clone()).ok_or_else(dangling),
        Some(SourceRef::Property(id)) => etg.property(id).map(|p| p.name.clone()).ok_or_else(dangling),
        Some(SourceRef::Triple(t)) => {
            let p = etg.property(&t.property).ok_or_else(dangling)?;
            let s = eg.entity(&t.subject).ok_or_else(dangling)?;
            let o = eg.entity(&t.object).ok_or_else(dangling)?;
            Ok(format!("{}({}, {})", p.name, s.name, o.name))
        }
    }
}
