use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{DataType, Etg};
use crate::context::Coordinates;
use crate::time::Timestamp;

/// A typed data property value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DataValue {
    Boolean(bool),
    Integer(i64),
    Float(f64),
    Text(String),
    Coordinates(Coordinates),
}

impl DataValue {
    pub fn conforms_to(&self, datatype: &DataType) -> bool {
        match (datatype, self) {
            (DataType::String, DataValue::Text(_)) => true,
            (DataType::Integer, DataValue::Integer(_)) => true,
            (DataType::Float, DataValue::Float(f)) => f.is_finite(),
            (DataType::Float, DataValue::Integer(_)) => true,
            (DataType::Boolean, DataValue::Boolean(_)) => true,
            (DataType::Timestamp, DataValue::Text(s)) => Timestamp::parse(s).is_ok(),
            (DataType::Coordinates, DataValue::Coordinates(c)) => c.check().is_ok(),
            (DataType::Enum(values), DataValue::Text(s)) => values.contains(s),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entity {
    pub id: String,
    pub name: String,
    pub etype: String,
    #[serde(default)]
    pub values: BTreeMap<String, DataValue>,
}

impl Entity {
    pub fn new(id: impl Into<String>, name: impl Into<String>, etype: impl Into<String>) -> Self {
        Entity {
            id: id.into(),
            name: name.into(),
            etype: etype.into(),
            values: BTreeMap::new(),
        }
    }
}

/// An object property value `property(subject, object)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Triple {
    pub property: String,
    pub subject: String,
    pub object: String,
}

impl Triple {
    pub fn new(property: impl Into<String>, subject: impl Into<String>, object: impl Into<String>) -> Self {
        Triple {
            property: property.into(),
            subject: subject.into(),
            object: object.into(),
        }
    }
}

impl std::fmt::Display for Triple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({}, {})", self.property, self.subject, self.object)
    }
}

/// Entity graph. `at` is `None` for a static graph that is not tied to a
/// stream record.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Eg {
    #[serde(default)]
    pub at: Option<Timestamp>,
    #[serde(default)]
    pub entities: Vec<Entity>,
    #[serde(default)]
    pub triples: BTreeSet<Triple>,
}

impl Eg {
    pub fn entity(&self, id: &str) -> Option<&Entity> {
        self.entities.iter().find(|e| e.id == id)
    }

    pub fn entity_index(&self) -> BTreeMap<&str, &Entity> {
        self.entities.iter().map(|e| (e.id.as_str(), e)).collect()
    }

    /// Entities whose type is (or inherits from) the observer type.
    pub fn observers<'a>(&'a self, etg: &'a Etg) -> impl Iterator<Item = &'a Entity> + 'a {
        self.entities.iter().filter(move |e| etg.is_a(&e.etype, &etg.me_etype))
    }

    pub fn me<'a>(&'a self, etg: &'a Etg) -> Option<&'a Entity> {
        self.observers(etg).next()
    }

    /// Triples whose property is not context dependent.
    pub fn static_triples<'a>(&'a self, etg: &'a Etg) -> impl Iterator<Item = &'a Triple> + 'a {
        self.triples
            .iter()
            .filter(move |t| !etg.property(&t.property).is_some_and(|p| p.context_dependent))
    }
}
