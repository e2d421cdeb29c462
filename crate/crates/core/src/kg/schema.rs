use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::report::{FindingKind, ValidationReport};

/// Properties whose values follow the observer's context unless an ETG says
/// otherwise.
pub const DEFAULT_CONTEXT_DEPENDENT: [&str; 8] = [
    "near",
    "use",
    "interact",
    "in",
    "do",
    "happenIn",
    "during",
    "participate",
];

/// Property names compiled as direct parent edges rather than property nodes.
pub const STRUCTURAL: [&str; 3] = ["isA", "partOf", "has"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataType {
    String,
    Integer,
    Float,
    Boolean,
    Timestamp,
    Coordinates,
    Enum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPropertyDef {
    pub name: String,
    pub datatype: DataType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntityType {
    pub id: String,
    pub name: String,
    /// Super type (`isA`).
    #[serde(default)]
    pub parent: Option<String>,
    #[serde(default)]
    pub data_properties: Vec<DataPropertyDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectPropertyDef {
    pub id: String,
    pub name: String,
    pub domain: String,
    pub codomain: String,
    #[serde(default)]
    pub context_dependent: bool,
    /// A function the observer assigns (FriendOf, RestToolOf, ...).
    #[serde(default)]
    pub function: bool,
}

impl ObjectPropertyDef {
    pub fn is_structural(&self) -> bool {
        STRUCTURAL.contains(&self.name.as_str())
    }
}

/// Entity type graph.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Etg {
    pub me_etype: String,
    /// Root of the action family, used to colour action nodes.
    #[serde(default)]
    pub action_etype: Option<String>,
    pub etypes: Vec<EntityType>,
    pub properties: Vec<ObjectPropertyDef>,
}

impl Etg {
    pub fn etype(&self, id: &str) -> Option<&EntityType> {
        self.etypes.iter().find(|e| e.id == id)
    }

    pub fn property(&self, id: &str) -> Option<&ObjectPropertyDef> {
        self.properties.iter().find(|p| p.id == id)
    }

    /// Super types of `id` from the immediate parent upwards. Stops at the
    /// first repeated or unknown type.
    pub fn ancestors(&self, id: &str) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        let mut cur = self.etype(id).and_then(|e| e.parent.as_deref());
        while let Some(c) = cur {
            if c == id || out.contains(&c) {
                break;
            }
            out.push(c);
            cur = self.etype(c).and_then(|e| e.parent.as_deref());
        }
        out
    }

    /// Whether `sub` equals `sup` or inherits from it.
    pub fn is_a(&self, sub: &str, sup: &str) -> bool {
        sub == sup || self.ancestors(sub).contains(&sup)
    }

    /// Own and inherited data properties. Name collisions are reported by
    /// [`validate_etg`](super::validate_etg); the nearest definition wins here.
    pub fn effective_data_properties(&self, id: &str) -> BTreeMap<&str, &DataType> {
        let mut out = BTreeMap::new();
        let chain = std::iter::once(id).chain(self.ancestors(id));
        for t in chain {
            if let Some(et) = self.etype(t) {
                for dp in &et.data_properties {
                    out.entry(dp.name.as_str()).or_insert(&dp.datatype);
                }
            }
        }
        out
    }

    pub fn context_dependent(&self) -> BTreeSet<String> {
        self.properties
            .iter()
            .filter(|p| p.context_dependent)
            .map(|p| p.id.clone())
            .collect()
    }

    /// The set of properties left out of hierarchy compilation by default:
    /// context-dependent properties that are not functions.
    pub fn default_q(&self) -> BTreeSet<String> {
        self.properties
            .iter()
            .filter(|p| p.context_dependent && !p.function)
            .map(|p| p.id.clone())
            .collect()
    }

    pub(crate) fn self_check(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let mut ids = BTreeSet::new();
        for e in &self.etypes {
            if !ids.insert(e.id.as_str()) {
                report.push(FindingKind::DuplicateId, &e.id, "duplicate entity type id");
            }
            if let Some(p) = &e.parent {
                if self.etype(p).is_none() {
                    report.push(
                        FindingKind::UnknownReference,
                        &e.id,
                        format!("unknown parent type `{p}`"),
                    );
                }
            }
            let mut names = BTreeSet::new();
            for dp in &e.data_properties {
                if !names.insert(dp.name.as_str()) {
                    report.push(
                        FindingKind::DuplicateId,
                        &e.id,
                        format!("data property `{}` declared twice", dp.name),
                    );
                }
                if let DataType::Enum(values) = &dp.datatype {
                    let distinct: BTreeSet<&String> = values.iter().collect();
                    if values.is_empty() {
                        report.push(FindingKind::Schema, &e.id, format!("enum `{}` has no values", dp.name));
                    } else if distinct.len() != values.len() {
                        report.push(
                            FindingKind::Schema,
                            &e.id,
                            format!("enum `{}` repeats a value", dp.name),
                        );
                    }
                }
            }
        }
        // inheritance cycles
        let mut reported = BTreeSet::new();
        for e in &self.etypes {
            let mut path = vec![e.id.as_str()];
            let mut cur = e.parent.as_deref();
            while let Some(c) = cur {
                if let Some(pos) = path.iter().position(|p| *p == c) {
                    let cycle: Vec<&str> = path[pos..].to_vec();
                    let key = *cycle.iter().min().unwrap_or(&c);
                    if reported.insert(key) {
                        report.push(
                            FindingKind::Cycle,
                            key,
                            format!("inheritance cycle {} -> {c}", cycle.join(" -> ")),
                        );
                    }
                    break;
                }
                path.push(c);
                cur = self.etype(c).and_then(|t| t.parent.as_deref());
            }
        }
        // inherited name collisions
        for e in &self.etypes {
            let own: BTreeSet<&str> = e.data_properties.iter().map(|d| d.name.as_str()).collect();
            for anc in self.ancestors(&e.id) {
                if let Some(a) = self.etype(anc) {
                    for dp in &a.data_properties {
                        if own.contains(dp.name.as_str()) {
                            report.push(
                                FindingKind::Schema,
                                &e.id,
                                format!("data property `{}` collides with inherited one from `{anc}`", dp.name),
                            );
                        }
                    }
                }
            }
        }
        if self.etype(&self.me_etype).is_none() {
            report.push(FindingKind::Observer, &self.me_etype, "observer type is not declared");
        }
        if let Some(a) = &self.action_etype {
            if self.etype(a).is_none() {
                report.push(FindingKind::UnknownReference, a, "action type is not declared");
            }
        }
        let mut pids = BTreeSet::new();
        for p in &self.properties {
            if !pids.insert(p.id.as_str()) {
                report.push(FindingKind::DuplicateId, &p.id, "duplicate object property id");
            }
            if p.name.is_empty() {
                report.push(FindingKind::Schema, &p.id, "object property name is empty");
            }
            for (role, t) in [("domain", &p.domain), ("codomain", &p.codomain)] {
                if self.etype(t).is_none() {
                    report.push(
                        FindingKind::UnknownReference,
                        &p.id,
                        format!("unknown {role} type `{t}`"),
                    );
                }
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn et(id: &str, parent: Option<&str>, props: &[(&str, DataType)]) -> EntityType {
        EntityType {
            id: id.into(),
            name: id.into(),
            parent: parent.map(Into::into),
            data_properties: props
                .iter()
                .map(|(n, t)| DataPropertyDef {
                    name: (*n).into(),
                    datatype: t.clone(),
                })
                .collect(),
        }
    }

    fn etg() -> Etg {
        Etg {
            me_etype: "Me".into(),
            action_etype: None,
            etypes: vec![
                et("Person", None, &[("name", DataType::String)]),
                et("Me", Some("Person"), &[("age", DataType::Integer)]),
            ],
            properties: vec![],
        }
    }

    #[test]
    fn inheritance_and_effective_properties() {
        let g = etg();
        assert!(g.is_a("Me", "Person"));
        assert!(!g.is_a("Person", "Me"));
        let props = g.effective_data_properties("Me");
        assert_eq!(props.keys().copied().collect::<Vec<_>>(), ["age", "name"]);
        assert!(g.self_check().is_empty());
    }

    #[test]
    fn collisions_cycles_and_bad_enums() {
        let mut g = etg();
        g.etypes[1].data_properties.push(DataPropertyDef {
            name: "name".into(),
            datatype: DataType::String,
        });
        g.etypes.push(et("A", Some("B"), &[("e", DataType::Enum(vec![]))]));
        g.etypes.push(et(
            "B",
            Some("A"),
            &[("f", DataType::Enum(vec!["x".into(), "x".into()]))],
        ));
        let r = g.self_check();
        assert_eq!(r.count(FindingKind::Cycle), 1);
        assert_eq!(r.count(FindingKind::Schema), 3, "{r}");
    }

    #[test]
    fn datatype_json_shape() {
        let t: DataType = serde_json::from_str(r#"{"enum":["happy","sad"]}"#).unwrap();
        assert_eq!(t, DataType::Enum(vec!["happy".into(), "sad".into()]));
        assert_eq!(serde_json::to_string(&DataType::Float).unwrap(), "\"float\"");
    }
}
