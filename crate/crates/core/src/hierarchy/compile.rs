use std::collections::BTreeSet;

use super::node::{entity_id, etype_id, property_id, ConceptNode, Family};
use super::{transitive_reduction, Hierarchy, HierarchyError};
use crate::kg::{validate_eg, validate_etg, Eg, Etg, STRUCTURAL};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompileOptions {
    /// Property ids left out of the hierarchy.
    pub q: BTreeSet<String>,
    /// Property names turned into direct child -> parent edges.
    pub structural: BTreeSet<String>,
}

impl CompileOptions {
    pub fn new(q: BTreeSet<String>) -> Self {
        CompileOptions {
            q,
            structural: STRUCTURAL.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Q taken from the ETG's context-dependent, non-function properties.
    pub fn for_etg(etg: &Etg) -> Self {
        Self::new(etg.default_q())
    }
}

/// Compiles with the default structural property set.
pub fn compile(etg: &Etg, eg: &Eg, q: &BTreeSet<String>) -> Result<Hierarchy, HierarchyError> {
    compile_with(etg, eg, &CompileOptions::new(q.clone()))
}

/// Builds the concept hierarchy of `etg` and `eg`.
///
/// 1. One node per entity type except the observer type.
/// 2. One node per entity except the observer, child of its type node.
/// 3. Inheritance links become child -> parent edges.
/// 4. For every property not in `q`: structural properties turn each
///    assertion (schema and instance level) into a direct edge; any other
///    property gets a node under its codomain type, and each of its triples
///    `p(a, b)` a node under the property node with `b` as its child.
/// 5. Parentless nodes are attached to the root.
/// 6. The result is transitively reduced.
///
/// Edges touching the observer are dropped; instance nodes of triples that
/// involve the observer are still created.
pub fn compile_with(etg: &Etg, eg: &Eg, opts: &CompileOptions) -> Result<Hierarchy, HierarchyError> {
    let mut report = validate_etg(etg);
    report.extend(validate_eg(etg, eg));
    if !report.is_empty() {
        return Err(HierarchyError::InvalidInput(report));
    }

    let is_observer_type = |t: &str| etg.is_a(t, &etg.me_etype);
    let is_action_type = |t: &str| etg.action_etype.as_deref().is_some_and(|a| etg.is_a(t, a));
    let mut h = Hierarchy::new(ConceptNode::root());

    for et in etg.etypes.iter().filter(|t| !is_observer_type(&t.id)) {
        h.add_node(ConceptNode::etype(&et.id, &et.name));
    }

    let observer_entities: BTreeSet<&str> = eg.observers(etg).map(|e| e.id.as_str()).collect();
    for e in eg
        .entities
        .iter()
        .filter(|e| !observer_entities.contains(e.id.as_str()))
    {
        let family = if is_action_type(&e.etype) {
            Family::Action
        } else {
            Family::Instance
        };
        h.add_node(ConceptNode::entity(&e.id, &e.name).with_family(family));
        h.add_edge(&entity_id(&e.id), &etype_id(&e.etype))?;
    }

    // Adds an edge when both endpoints survived observer exclusion.
    let link = |h: &mut Hierarchy, child: &str, parent: &str| -> Result<(), HierarchyError> {
        if h.node(child).is_some() && h.node(parent).is_some() {
            h.add_edge(child, parent)?;
        }
        Ok(())
    };

    for et in &etg.etypes {
        if let Some(parent) = &et.parent {
            link(&mut h, &etype_id(&et.id), &etype_id(parent))?;
        }
    }

    let mut properties: Vec<_> = etg.properties.iter().filter(|p| !opts.q.contains(&p.id)).collect();
    properties.sort_by(|a, b| a.id.cmp(&b.id));
    for p in properties {
        let structural = opts.structural.contains(&p.name);
        let family = if p.function { Family::Function } else { Family::Schema };
        if structural {
            link(&mut h, &etype_id(&p.domain), &etype_id(&p.codomain))?;
        } else {
            h.add_node(ConceptNode::property(&p.id, &p.name).with_family(family));
            link(&mut h, &property_id(&p.id), &etype_id(&p.codomain))?;
        }
        for t in eg.triples.iter().filter(|t| t.property == p.id) {
            if structural {
                link(&mut h, &entity_id(&t.subject), &entity_id(&t.object))?;
                continue;
            }
            let name = |id: &str| eg.entity(id).map_or(id.to_string(), |e| e.name.clone());
            let display = format!("{}({}, {})", p.name, name(&t.subject), name(&t.object));
            let inst = ConceptNode::property_instance(t, display).with_family(if p.function {
                Family::Function
            } else {
                Family::Instance
            });
            let inst_id = inst.id.clone();
            h.add_node(inst);
            h.add_edge(&inst_id, &property_id(&p.id))?;
            link(&mut h, &entity_id(&t.object), &inst_id)?;
        }
    }

    let root = h.root().to_string();
    let with_parent: BTreeSet<&str> = h.edges().iter().map(|(c, _)| c.as_str()).collect();
    let orphans: Vec<String> = h
        .node_ids()
        .filter(|id| *id != root && !with_parent.contains(id))
        .map(str::to_string)
        .collect();
    for id in orphans {
        h.add_edge(&id, &root)?;
    }

    if let Some(cycle) = h.find_cycle() {
        return Err(HierarchyError::Cycle(cycle));
    }
    transitive_reduction(&h)
}
