#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use perscontext::context::{StreamRecord, World};
use perscontext::harness::ScenarioScript;
use perscontext::io;
use perscontext::kg::{Eg, Etg};

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(rel)
}

pub struct Travel {
    pub etg: Etg,
    pub eg: Eg,
    pub world: World,
    pub stream: Vec<StreamRecord>,
    pub scenario: ScenarioScript,
}

pub fn travel() -> Travel {
    Travel {
        etg: io::load(&fixture("travel/etg.json")).unwrap(),
        eg: io::load(&fixture("travel/eg.json")).unwrap(),
        world: io::load(&fixture("travel/world.json")).unwrap(),
        stream: io::parse_stream(&io::read_text(&fixture("travel/stream.jsonl")).unwrap()).unwrap(),
        scenario: io::load(&fixture("travel/scenario.json")).unwrap(),
    }
}

fn pairs(list: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    list.iter().map(|(c, p)| (c.to_string(), p.to_string())).collect()
}

/// Node ids of the travel hierarchy, worked out by hand.
pub fn travel_nodes() -> BTreeSet<String> {
    let etypes = [
        "Person",
        "Object",
        "Seat",
        "Smartphone",
        "Location",
        "Region",
        "City",
        "Road",
        "Train",
        "Station",
        "Home",
        "Event",
        "Travel",
        "TravelLeg",
        "Action",
    ];
    let entities = [
        "Haonan",
        "Seat 1",
        "Smartphone 1",
        "Trentino",
        "Trento",
        "Rovereto",
        "Train 1",
        "Roads 2",
        "Trento Train Station",
        "Xiaoyue's Home",
        "Travel 1",
        "Take Train",
        "Walk",
        "Sitting",
        "Walking",
        "Talking",
        "Listening",
    ];
    let mut ids: BTreeSet<String> = ["root"].iter().map(|s| s.to_string()).collect();
    ids.extend(etypes.iter().map(|e| format!("etype:{e}")));
    ids.extend(entities.iter().map(|e| format!("entity:{e}")));
    ids.extend(
        [
            "prop:owns",
            "prop:FriendOf",
            "prop:RestToolOf",
            "pinst:owns/Xiaoyue/Smartphone 1",
            "pinst:FriendOf/Xiaoyue/Haonan",
            "pinst:RestToolOf/Xiaoyue/Seat 1",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    ids
}

/// Edges of the travel hierarchy after reduction, worked out by hand.
pub fn travel_edges() -> BTreeSet<(String, String)> {
    pairs(&[
        ("etype:Person", "root"),
        ("etype:Object", "root"),
        ("etype:Location", "root"),
        ("etype:Event", "root"),
        ("etype:Action", "root"),
        ("etype:Seat", "etype:Object"),
        ("etype:Seat", "etype:Train"),
        ("etype:Smartphone", "etype:Object"),
        ("etype:Region", "etype:Location"),
        ("etype:Train", "etype:Location"),
        ("etype:City", "etype:Region"),
        ("etype:Road", "etype:City"),
        ("etype:Station", "etype:City"),
        ("etype:Home", "etype:City"),
        ("etype:Travel", "etype:Event"),
        ("etype:TravelLeg", "etype:Travel"),
        ("entity:Seat 1", "etype:Seat"),
        ("entity:Seat 1", "entity:Train 1"),
        ("entity:Seat 1", "pinst:RestToolOf/Xiaoyue/Seat 1"),
        ("entity:Smartphone 1", "etype:Smartphone"),
        ("entity:Smartphone 1", "pinst:owns/Xiaoyue/Smartphone 1"),
        ("entity:Haonan", "pinst:FriendOf/Xiaoyue/Haonan"),
        ("entity:Trentino", "etype:Region"),
        ("entity:Trento", "etype:City"),
        ("entity:Trento", "entity:Trentino"),
        ("entity:Rovereto", "etype:City"),
        ("entity:Rovereto", "entity:Trentino"),
        ("entity:Train 1", "etype:Train"),
        ("entity:Roads 2", "etype:Road"),
        ("entity:Roads 2", "entity:Trento"),
        ("entity:Trento Train Station", "etype:Station"),
        ("entity:Trento Train Station", "entity:Trento"),
        ("entity:Xiaoyue's Home", "etype:Home"),
        ("entity:Xiaoyue's Home", "entity:Trento"),
        ("entity:Travel 1", "etype:Travel"),
        ("entity:Take Train", "etype:TravelLeg"),
        ("entity:Take Train", "entity:Travel 1"),
        ("entity:Walk", "etype:TravelLeg"),
        ("entity:Walk", "entity:Travel 1"),
        ("entity:Sitting", "etype:Action"),
        ("entity:Walking", "etype:Action"),
        ("entity:Talking", "etype:Action"),
        ("entity:Listening", "etype:Action"),
        ("prop:owns", "etype:Object"),
        ("prop:FriendOf", "etype:Person"),
        ("prop:RestToolOf", "etype:Object"),
        ("pinst:owns/Xiaoyue/Smartphone 1", "prop:owns"),
        ("pinst:FriendOf/Xiaoyue/Haonan", "prop:FriendOf"),
        ("pinst:RestToolOf/Xiaoyue/Seat 1", "prop:RestToolOf"),
    ])
}

use perscontext::context::{Coordinates, ObjectEntry, PersonEntry};
use perscontext::Timestamp;
use proptest::prelude::*;

fn pick(ids: &'static [&'static str]) -> impl Strategy<Value = Option<String>> {
    proptest::option::of(proptest::sample::select(ids).prop_map(String::from))
}

fn subset(ids: &'static [&'static str]) -> impl Strategy<Value = std::collections::BTreeSet<String>> {
    proptest::sample::subsequence(ids, 0..=ids.len()).prop_map(|v| v.into_iter().map(String::from).collect())
}

pub const LOCATIONS: &[&str] = &[
    "Trentino",
    "Trento",
    "Rovereto",
    "Train 1",
    "Roads 2",
    "Trento Train Station",
    "Xiaoyue's Home",
];
pub const EVENTS: &[&str] = &["Travel 1", "Take Train", "Walk"];
pub const ACTIONS: &[&str] = &["Sitting", "Walking", "Talking", "Listening"];
pub const OBJECTS: &[&str] = &["Seat 1", "Smartphone 1"];

/// Records over the travel entities with any column possibly missing.
pub fn arb_travel_record() -> impl Strategy<Value = StreamRecord> {
    let person = subset(ACTIONS).prop_map(|actions| PersonEntry {
        function: "FriendOf".into(),
        holder: "Haonan".into(),
        beneficiary: "Xiaoyue".into(),
        actions,
    });
    let object = proptest::sample::select(OBJECTS).prop_map(|o| ObjectEntry {
        function: "RestToolOf".into(),
        holder: o.into(),
        beneficiary: "Xiaoyue".into(),
    });
    (
        0i64..86_400,
        (pick(LOCATIONS), pick(LOCATIONS), pick(EVENTS), pick(EVENTS)),
        proptest::option::of((0.0..60000.0f64, 0.0..80000.0f64)),
        proptest::option::of(subset(ACTIONS)),
        proptest::option::of(proptest::collection::vec(person, 0..2)),
        proptest::option::of(proptest::collection::vec(object, 0..3)),
    )
        .prop_map(
            |(secs, (super_location, location, super_event, event), xy, my_actions, persons, objects)| StreamRecord {
                ts: Timestamp::utc(2021, 6, 2, 0, 0, 0).unwrap().plus_seconds(secs),
                super_location,
                super_event,
                location,
                event,
                coo_me: xy.map(|(x, y)| Coordinates::new(x, y, 0.0, "trentino").unwrap()),
                my_actions,
                persons,
                objects,
            },
        )
}

use perscontext::hierarchy::{ConceptNode, Hierarchy};
use rand::Rng;

/// A rooted DAG: node `i > 0` gets one to three parents among nodes `< i`,
/// node 0 being the root.
pub fn random_hierarchy(rng: &mut impl Rng, n: usize) -> Hierarchy {
    let mut h = Hierarchy::new(ConceptNode::root());
    let id = |i: usize| {
        if i == 0 {
            "root".to_string()
        } else {
            format!("etype:n{i:02}")
        }
    };
    for i in 1..n {
        h.add_node(ConceptNode::etype(&format!("n{i:02}"), &format!("n{i:02}")));
        for _ in 0..rng.random_range(1..=3) {
            let p = rng.random_range(0..i);
            h.add_edge(&id(i), &id(p)).unwrap();
        }
    }
    h
}

/// Ancestors of every seed, seeds included, by plain graph search.
pub fn closure(edges: &BTreeSet<(String, String)>, seeds: &[String]) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = seeds.iter().cloned().collect();
    let mut stack: Vec<String> = seeds.to_vec();
    while let Some(u) = stack.pop() {
        for (c, p) in edges {
            if *c == u && out.insert(p.clone()) {
                stack.push(p.clone());
            }
        }
    }
    out
}
