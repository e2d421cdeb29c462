mod common;

use std::collections::BTreeSet;

use perscontext::context::{classify_pattern, super_of, ContextPattern, PatternFocus, StreamingContext};
use perscontext::Timestamp;

use common::travel;

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn travel_rows_parse_exactly() {
    let t = travel();
    let [r1, r2] = &t.stream[..] else {
        panic!("expected two rows")
    };
    let tz = |h, m| Timestamp::parse(&format!("2021-06-02T{h:02}:{m:02}:00+02:00")).unwrap();
    assert_eq!(r1.ts, tz(12, 15));
    assert_eq!(r2.ts, tz(12, 30));
    for r in [r1, r2] {
        assert_eq!(r.super_location.as_deref(), Some("Trentino"));
        assert_eq!(r.super_event.as_deref(), Some("Travel 1"));
    }
    assert_eq!(
        (r1.location.as_deref(), r1.event.as_deref()),
        (Some("Train 1"), Some("Take Train"))
    );
    assert_eq!(
        (r2.location.as_deref(), r2.event.as_deref()),
        (Some("Roads 2"), Some("Walk"))
    );
    assert_eq!(r1.my_actions, Some(set(&["Sitting"])));
    assert_eq!(r2.my_actions, Some(set(&["Walking", "Talking"])));
    assert_eq!(r1.persons, None);
    assert_eq!(r2.objects, None);
    let a1: Vec<String> = r1.assignments().map(|a| a.to_string()).collect();
    let a2: Vec<String> = r2.assignments().map(|a| a.to_string()).collect();
    assert_eq!(a1, ["RestToolOf(Xiaoyue, Seat 1)"]);
    assert_eq!(a2, ["FriendOf(Xiaoyue, Haonan)"]);
    assert_eq!(r2.persons.as_ref().unwrap()[0].actions, set(&["Walking", "Listening"]));
}

#[test]
fn super_chains_match_world() {
    let t = travel();
    assert!(t.world.validate().is_empty(), "{}", t.world.validate());
    let c = t.world.containment().unwrap();
    assert_eq!(super_of("Train 1", &c.locations).unwrap(), ["Trentino"]);
    assert_eq!(super_of("Roads 2", &c.locations).unwrap(), ["Trento", "Trentino"]);
    assert_eq!(super_of("Take Train", &c.events).unwrap(), ["Travel 1"]);
    for r in &t.stream {
        r.check_super_chains(&c).unwrap();
    }
}

#[test]
fn travel_window_is_one_event_many_locations() {
    let t = travel();
    let c = t.world.containment().unwrap();
    let window = StreamingContext::from_records(t.stream.clone(), &c).unwrap();
    assert_eq!(
        classify_pattern(&window, PatternFocus::Location).unwrap(),
        ContextPattern::OneEventManyLocs
    );
    assert_eq!(ContextPattern::OneEventManyLocs.short_name(), "1EML");
}

#[test]
fn out_of_order_rows_rejected() {
    let t = travel();
    let c = t.world.containment().unwrap();
    let mut rows = t.stream.clone();
    rows.reverse();
    assert!(StreamingContext::from_records(rows, &c).is_err());
}
