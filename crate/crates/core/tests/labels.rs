mod common;

use std::collections::BTreeSet;

use perscontext::hierarchy::compile;
use perscontext::kg::snapshot_eg;
use perscontext::labels::{
    check_consistency, is_consistent, labels_from_eg, repair_downward, repair_upward, LabelSpace, LabelVector,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{arb_travel_record, closure, random_hierarchy, travel, travel_edges};

#[test]
fn walk_record_labels() {
    let t = travel();
    let h = compile(&t.etg, &t.eg, &t.etg.default_q()).unwrap();
    let space = LabelSpace::new(&h).unwrap();
    let s = snapshot_eg(&t.eg, &t.stream[1], &t.etg);
    let (y, report) = labels_from_eg(&space, &h, &t.etg, &s.eg);
    assert!(report.is_empty(), "{report}");
    let seeds: Vec<String> = ["Roads 2", "Walk", "Walking", "Talking", "Listening", "Haonan"]
        .iter()
        .map(|e| format!("entity:{e}"))
        .chain(["pinst:FriendOf/Xiaoyue/Haonan", "pinst:owns/Xiaoyue/Smartphone 1"].map(String::from))
        .collect();
    let expected = closure(&travel_edges(), &seeds);
    let got: BTreeSet<String> = y.set_ids(&space).map(String::from).collect();
    assert_eq!(got, expected);
    assert!(got.contains("root") && got.contains("entity:Travel 1") && got.contains("entity:Trentino"));
    assert!(!got.contains("entity:Train 1"));
}

#[test]
fn static_snapshot_without_record_facts() {
    let t = travel();
    let h = compile(&t.etg, &t.eg, &t.etg.default_q()).unwrap();
    let space = LabelSpace::new(&h).unwrap();
    let (y, _) = labels_from_eg(&space, &h, &t.etg, &t.eg);
    let got: BTreeSet<String> = y.set_ids(&space).map(String::from).collect();
    let seeds = [
        "entity:Haonan",
        "entity:Seat 1",
        "pinst:FriendOf/Xiaoyue/Haonan",
        "pinst:RestToolOf/Xiaoyue/Seat 1",
        "pinst:owns/Xiaoyue/Smartphone 1",
    ]
    .map(String::from);
    assert_eq!(got, closure(&travel_edges(), &seeds));
}

#[test]
fn repairs_on_random_hierarchies() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1, 2, 5, 20, 40] {
        let h = random_hierarchy(&mut rng, n);
        let space = LabelSpace::new(&h).unwrap();
        for _ in 0..200 {
            let y = LabelVector::from_bits((0..n).map(|_| rand::Rng::random_bool(&mut rng, 0.4)).collect());
            let up = repair_upward(&space, &y).unwrap();
            let down = repair_downward(&space, &y).unwrap();
            assert!(is_consistent(&space, &up) && is_consistent(&space, &down));
            assert!(down.is_subset(&y) && y.is_subset(&up));
            assert_eq!(repair_upward(&space, &up).unwrap(), up);
            assert_eq!(repair_downward(&space, &down).unwrap(), down);
            assert_eq!(is_consistent(&space, &y), up == y);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn travel_labels_are_consistent(record in arb_travel_record()) {
        let t = travel();
        let h = compile(&t.etg, &t.eg, &t.etg.default_q()).unwrap();
        let space = LabelSpace::new(&h).unwrap();
        let s = snapshot_eg(&t.eg, &record, &t.etg);
        let (y, _) = labels_from_eg(&space, &h, &t.etg, &s.eg);
        prop_assert!(check_consistency(&space, &y).unwrap().is_empty());
        prop_assert!(y.get(space.position("root").unwrap()));
    }
}
