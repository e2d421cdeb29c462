mod common;

use std::collections::BTreeSet;

use perscontext::io;
use perscontext::kg::{apply_context_update, snapshot_eg, validate_eg, validate_etg, Triple};
use perscontext::FindingKind;
use proptest::prelude::*;

use common::{arb_travel_record, fixture, travel};

fn dynamic(eg: &perscontext::kg::Eg, etg: &perscontext::kg::Etg) -> BTreeSet<Triple> {
    let cd = etg.context_dependent();
    eg.triples
        .iter()
        .filter(|t| cd.contains(&t.property))
        .cloned()
        .collect()
}

fn triples(list: &[(&str, &str, &str)]) -> BTreeSet<Triple> {
    list.iter().map(|(p, s, o)| Triple::new(*p, *s, *o)).collect()
}

#[test]
fn fixtures_are_valid() {
    let t = travel();
    assert!(validate_etg(&t.etg).is_empty(), "{}", validate_etg(&t.etg));
    assert!(validate_eg(&t.etg, &t.eg).is_empty(), "{}", validate_eg(&t.etg, &t.eg));
}

#[test]
fn domain_violation_fixture_has_one_finding() {
    let t = travel();
    let bad = io::load(&fixture("invalid/eg_domain_violation.json")).unwrap();
    let report = validate_eg(&t.etg, &bad);
    assert_eq!(report.len(), 1, "{report}");
    assert_eq!(report.count(FindingKind::DomainViolation), 1);
}

#[test]
fn train_record_snapshot() {
    let t = travel();
    let s = snapshot_eg(&t.eg, &t.stream[0], &t.etg);
    assert!(s.unresolved.is_empty(), "{:?}", s.unresolved);
    assert_eq!(s.eg.at, Some(t.stream[0].ts));
    assert_eq!(
        dynamic(&s.eg, &t.etg),
        triples(&[
            ("in", "Xiaoyue", "Train 1"),
            ("do", "Xiaoyue", "Sitting"),
            ("happenIn", "Take Train", "Train 1"),
            ("participate", "Xiaoyue", "Take Train"),
            ("RestToolOf", "Xiaoyue", "Seat 1"),
        ])
    );
    let statics: BTreeSet<_> = t.eg.static_triples(&t.etg).cloned().collect();
    assert!(statics.is_subset(&s.eg.triples));
}

#[test]
fn walk_record_snapshot() {
    let t = travel();
    let s = snapshot_eg(&t.eg, &t.stream[1], &t.etg);
    assert!(s.unresolved.is_empty(), "{:?}", s.unresolved);
    assert_eq!(
        dynamic(&s.eg, &t.etg),
        triples(&[
            ("in", "Xiaoyue", "Roads 2"),
            ("do", "Xiaoyue", "Walking"),
            ("do", "Xiaoyue", "Talking"),
            ("happenIn", "Walk", "Roads 2"),
            ("participate", "Xiaoyue", "Walk"),
            ("participate", "Haonan", "Walk"),
            ("do", "Haonan", "Walking"),
            ("do", "Haonan", "Listening"),
            ("FriendOf", "Xiaoyue", "Haonan"),
        ])
    );
}

#[test]
fn consecutive_rows_leave_no_stale_location() {
    let t = travel();
    let first = snapshot_eg(&t.eg, &t.stream[0], &t.etg);
    let second = snapshot_eg(&first.eg, &t.stream[1], &t.etg);
    let ins: Vec<_> = second.eg.triples.iter().filter(|t| t.property == "in").collect();
    assert_eq!(ins, vec![&Triple::new("in", "Xiaoyue", "Roads 2")]);
}

#[test]
fn recognized_location_replaces_previous() {
    let t = travel();
    let mut eg = t.eg.clone();
    eg.triples.insert(Triple::new("in", "Xiaoyue", "Rovereto"));
    let update = triples(&[("in", "Xiaoyue", "Trento")]);
    let out = apply_context_update(&eg, &t.etg, &update).unwrap();
    let ins: Vec<_> = out.triples.iter().filter(|t| t.property == "in").collect();
    assert_eq!(ins, vec![&Triple::new("in", "Xiaoyue", "Trento")]);
    assert_eq!(apply_context_update(&out, &t.etg, &update).unwrap(), out);
    assert!(validate_eg(&t.etg, &out).is_empty());
}

#[test]
fn static_update_is_rejected() {
    let t = travel();
    let update = triples(&[("owns", "Xiaoyue", "Seat 1")]);
    assert!(apply_context_update(&t.eg, &t.etg, &update).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn snapshots_validate(record in arb_travel_record()) {
        let t = travel();
        let s = snapshot_eg(&t.eg, &record, &t.etg);
        let report = validate_eg(&t.etg, &s.eg);
        prop_assert!(report.is_empty(), "{}", report);
        prop_assert_eq!(snapshot_eg(&s.eg, &record, &t.etg), s);
    }
}
