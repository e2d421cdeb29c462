use serde::{Deserialize, Serialize};

use crate::kg::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Root,
    Etype,
    Entity,
    Property,
    PropertyInstance,
}

/// Back-reference from a concept node into the schema or instance graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceRef {
    Etype(String),
    Entity(String),
    Property(String),
    Triple(Triple),
}

/// Rendering family of a node: schema-derived, instance-derived, action or
/// function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Root,
    Schema,
    Instance,
    Action,
    Function,
}

impl Family {
    pub fn for_kind(kind: NodeKind) -> Self {
        match kind {
            NodeKind::Root => Family::Root,
            NodeKind::Etype | NodeKind::Property => Family::Schema,
            NodeKind::Entity | NodeKind::PropertyInstance => Family::Instance,
        }
    }

    pub fn color(&self) -> &'static str {
        match self {
            Family::Root => "gray",
            Family::Schema => "lightblue",
            Family::Instance => "orange",
            Family::Action => "red",
            Family::Function => "green",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConceptNode {
    pub id: String,
    pub kind: NodeKind,
    pub display_name: String,
    pub source_ref: Option<SourceRef>,
    pub family: Family,
}

pub const ROOT_ID: &str = "root";
pub const ROOT_NAME: &str = "context";

impl ConceptNode {
    pub fn root() -> Self {
        ConceptNode {
            id: ROOT_ID.into(),
            kind: NodeKind::Root,
            display_name: ROOT_NAME.into(),
            source_ref: None,
            family: Family::Root,
        }
    }

    pub fn etype(id: &str, name: &str) -> Self {
        Self::sourced(etype_id(id), NodeKind::Etype, name, SourceRef::Etype(id.into()))
    }

    pub fn entity(id: &str, name: &str) -> Self {
        Self::sourced(entity_id(id), NodeKind::Entity, name, SourceRef::Entity(id.into()))
    }

    pub fn property(id: &str, name: &str) -> Self {
        Self::sourced(
            property_id(id),
            NodeKind::Property,
            name,
            SourceRef::Property(id.into()),
        )
    }

    pub fn property_instance(t: &Triple, display_name: String) -> Self {
        Self::sourced(
            pinst_id(t),
            NodeKind::PropertyInstance,
            &display_name,
            SourceRef::Triple(t.clone()),
        )
    }

    fn sourced(id: String, kind: NodeKind, name: &str, source: SourceRef) -> Self {
        ConceptNode {
            id,
            kind,
            display_name: name.into(),
            source_ref: Some(source),
            family: Family::for_kind(kind),
        }
    }

    pub fn with_family(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    /// Whether `kind` and `source_ref` agree.
    pub fn ref_matches_kind(&self) -> bool {
        matches!(
            (self.kind, &self.source_ref),
            (NodeKind::Root, None)
                | (NodeKind::Etype, Some(SourceRef::Etype(_)))
                | (NodeKind::Entity, Some(SourceRef::Entity(_)))
                | (NodeKind::Property, Some(SourceRef::Property(_)))
                | (NodeKind::PropertyInstance, Some(SourceRef::Triple(_)))
        )
    }
}

pub fn etype_id(id: &str) -> String {
    format!("etype:{id}")
}

pub fn entity_id(id: &str) -> String {
    format!("entity:{id}")
}

pub fn property_id(id: &str) -> String {
    format!("prop:{id}")
}

pub fn pinst_id(t: &Triple) -> String {
    format!("pinst:{}/{}/{}", t.property, t.subject, t.object)
}
