use std::collections::BTreeSet;

use super::{Eg, Etg};
use crate::report::{FindingKind, ValidationReport};

/// Structural checks of an entity type graph on its own.
pub fn validate_etg(etg: &Etg) -> ValidationReport {
    etg.self_check()
}

/// Checks that `eg` conforms to `etg`. Every problem becomes a finding; an
/// empty report means the graph conforms.
pub fn validate_eg(etg: &Etg, eg: &Eg) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut ids = BTreeSet::new();
    for e in &eg.entities {
        if !ids.insert(e.id.as_str()) {
            report.push(FindingKind::DuplicateId, &e.id, "duplicate entity id");
        }
        if etg.etype(&e.etype).is_none() {
            report.push(
                FindingKind::UnknownReference,
                &e.id,
                format!("unknown entity type `{}`", e.etype),
            );
            continue;
        }
        let allowed = etg.effective_data_properties(&e.etype);
        for (name, value) in &e.values {
            match allowed.get(name.as_str()) {
                None => report.push(
                    FindingKind::DatatypeMismatch,
                    &e.id,
                    format!("`{name}` is not a data property of `{}`", e.etype),
                ),
                Some(dt) if !value.conforms_to(dt) => report.push(
                    FindingKind::DatatypeMismatch,
                    &e.id,
                    format!("value of `{name}` does not conform to {dt:?}"),
                ),
                Some(_) => {}
            }
        }
    }
    let observers = eg.observers(etg).count();
    if observers > 1 {
        report.push(
            FindingKind::Observer,
            &etg.me_etype,
            format!("{observers} observer entities, expected at most one"),
        );
    }
    let index = eg.entity_index();
    for t in &eg.triples {
        let Some(p) = etg.property(&t.property) else {
            report.push(
                FindingKind::UnknownReference,
                t.to_string(),
                format!("unknown property `{}`", t.property),
            );
            continue;
        };
        match index.get(t.subject.as_str()) {
            None => report.push(
                FindingKind::UnknownReference,
                t.to_string(),
                format!("unknown subject `{}`", t.subject),
            ),
            Some(s) if etg.etype(&s.etype).is_some() && !etg.is_a(&s.etype, &p.domain) => report.push(
                FindingKind::DomainViolation,
                t.to_string(),
                format!("subject type `{}` is not a `{}`", s.etype, p.domain),
            ),
            Some(_) => {}
        }
        match index.get(t.object.as_str()) {
            None => report.push(
                FindingKind::UnknownReference,
                t.to_string(),
                format!("unknown object `{}`", t.object),
            ),
            Some(o) if etg.etype(&o.etype).is_some() && !etg.is_a(&o.etype, &p.codomain) => report.push(
                FindingKind::CodomainViolation,
                t.to_string(),
                format!("object type `{}` is not a `{}`", o.etype, p.codomain),
            ),
            Some(_) => {}
        }
    }
    report
}
