use std::collections::BTreeSet;

use super::{Eg, Etg, Triple};
use crate::context::StreamRecord;
use crate::report::{FindingKind, ValidationReport};

/// An entity graph materialized for one stream record.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub eg: Eg,
    /// Facts of the record that could not be expressed against the static
    /// graph (unknown entities, no matching property).
    pub unresolved: Vec<String>,
}

struct Materializer<'a> {
    etg: &'a Etg,
    base: &'a Eg,
    triples: BTreeSet<Triple>,
    unresolved: Vec<String>,
}

impl Materializer<'_> {
    fn add(&mut self, property: &str, subject: &str, object: &str) {
        let index = self.base.entity_index();
        let (s, o) = match (index.get(subject), index.get(object)) {
            (Some(s), Some(o)) => (s, o),
            (s, o) => {
                for (id, found) in [(subject, s.is_some()), (object, o.is_some())] {
                    let note = format!("unknown entity `{id}`");
                    if !found && !self.unresolved.contains(&note) {
                        self.unresolved.push(note);
                    }
                }
                return;
            }
        };
        let candidate = self.etg.properties.iter().find(|p| {
            p.name == property
                && p.context_dependent
                && self.etg.is_a(&s.etype, &p.domain)
                && self.etg.is_a(&o.etype, &p.codomain)
        });
        match candidate {
            Some(p) => {
                self.triples.insert(Triple::new(&p.id, subject, object));
            }
            None => self.unresolved.push(format!(
                "no context-dependent property `{property}` accepts ({subject}, {object})"
            )),
        }
    }
}

/// Copies `static_eg`, stamps it with the record's time and regenerates its
/// context-dependent triples from the record.
///
/// Generated facts: observer `in` location, observer `do` each own action,
/// event `happenIn` location, observer and every listed person `participate`
/// in the event, persons `do` their actions, and each function assignment as
/// `function(beneficiary, holder)`. Properties are resolved by name among the
/// context-dependent properties whose domain and codomain accept the
/// endpoints.
pub fn snapshot_eg(static_eg: &Eg, record: &StreamRecord, etg: &Etg) -> Snapshot {
    let mut m = Materializer {
        etg,
        base: static_eg,
        triples: BTreeSet::new(),
        unresolved: Vec::new(),
    };
    let me = static_eg.me(etg).map(|e| e.id.clone());
    if me.is_none() {
        m.unresolved.push("no observer entity".into());
    }
    if let Some(me) = &me {
        if let Some(loc) = &record.location {
            m.add("in", me, loc);
        }
        for action in record.my_actions.iter().flatten() {
            m.add("do", me, action);
        }
        if let Some(ev) = &record.event {
            m.add("participate", me, ev);
        }
    }
    if let (Some(ev), Some(loc)) = (&record.event, &record.location) {
        m.add("happenIn", ev, loc);
    }
    for person in record.persons.iter().flatten() {
        if let Some(ev) = &record.event {
            m.add("participate", &person.holder, ev);
        }
        for action in &person.actions {
            m.add("do", &person.holder, action);
        }
    }
    for f in record.assignments() {
        m.add(&f.function_name, &f.beneficiary, &f.holder);
    }
    let mut eg = static_eg.clone();
    eg.at = Some(record.ts);
    eg.triples
        .retain(|t| !etg.property(&t.property).is_some_and(|p| p.context_dependent));
    eg.triples.extend(m.triples);
    Snapshot {
        eg,
        unresolved: m.unresolved,
    }
}

/// Replaces, for every (property, subject) pair touched by `recognized`, the
/// existing triples with the recognized ones. Only context-dependent
/// properties may be updated; otherwise nothing is applied and the offending
/// triples are reported.
pub fn apply_context_update(eg: &Eg, etg: &Etg, recognized: &BTreeSet<Triple>) -> Result<Eg, ValidationReport> {
    let mut report = ValidationReport::new();
    for t in recognized {
        match etg.property(&t.property) {
            None => report.push(FindingKind::UnknownReference, t.to_string(), "unknown property"),
            Some(p) if !p.context_dependent => report.push(
                FindingKind::Schema,
                t.to_string(),
                format!("`{}` is static and cannot be updated", p.id),
            ),
            Some(_) => {}
        }
    }
    if !report.is_empty() {
        return Err(report);
    }
    let touched: BTreeSet<(&str, &str)> = recognized
        .iter()
        .map(|t| (t.property.as_str(), t.subject.as_str()))
        .collect();
    let mut out = eg.clone();
    out.triples
        .retain(|t| !touched.contains(&(t.property.as_str(), t.subject.as_str())));
    out.triples.extend(recognized.iter().cloned());
    Ok(out)
}
