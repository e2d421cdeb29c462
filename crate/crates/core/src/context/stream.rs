use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ContextError, Coordinates, EventInstance, FunctionAssignment, LocationRef};
use crate::time::Timestamp;

/// A person column of a stream record: the function the observer assigns to
/// the person, and what the person is doing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PersonEntry {
    pub function: String,
    pub holder: String,
    pub beneficiary: String,
    #[serde(default)]
    pub actions: BTreeSet<String>,
}

impl PersonEntry {
    pub fn new(assignment: &FunctionAssignment, actions: impl IntoIterator<Item = impl Into<String>>) -> Self {
        PersonEntry {
            function: assignment.function_name.clone(),
            holder: assignment.holder.clone(),
            beneficiary: assignment.beneficiary.clone(),
            actions: actions.into_iter().map(Into::into).collect(),
        }
    }

    pub fn assignment(&self) -> FunctionAssignment {
        FunctionAssignment::new(&self.function, &self.beneficiary, &self.holder)
    }
}

/// An object column of a stream record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectEntry {
    pub function: String,
    pub holder: String,
    pub beneficiary: String,
}

impl ObjectEntry {
    pub fn assignment(&self) -> FunctionAssignment {
        FunctionAssignment::new(&self.function, &self.beneficiary, &self.holder)
    }
}

impl From<&FunctionAssignment> for ObjectEntry {
    fn from(f: &FunctionAssignment) -> Self {
        ObjectEntry {
            function: f.function_name.clone(),
            holder: f.holder.clone(),
            beneficiary: f.beneficiary.clone(),
        }
    }
}

/// One row of the personal streaming context.
///
/// Every column except `ts` may be missing; `None` is the missing marker and
/// serializes as JSON `null`. A present but empty list is distinct from a
/// missing column.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StreamRecord {
    pub ts: Timestamp,
    #[serde(default)]
    pub super_location: Option<String>,
    #[serde(default)]
    pub super_event: Option<String>,
    #[serde(default)]
    pub location: Option<String>,
    #[serde(default)]
    pub event: Option<String>,
    #[serde(default)]
    pub coo_me: Option<Coordinates>,
    #[serde(default)]
    pub my_actions: Option<BTreeSet<String>>,
    #[serde(default)]
    pub persons: Option<Vec<PersonEntry>>,
    #[serde(default)]
    pub objects: Option<Vec<ObjectEntry>>,
}

impl StreamRecord {
    /// A record with every column missing.
    pub fn empty(ts: Timestamp) -> Self {
        StreamRecord {
            ts,
            super_location: None,
            super_event: None,
            location: None,
            event: None,
            coo_me: None,
            my_actions: None,
            persons: None,
            objects: None,
        }
    }

    /// Function assignments carried by the person and object columns.
    pub fn assignments(&self) -> impl Iterator<Item = FunctionAssignment> + '_ {
        let persons = self.persons.iter().flatten().map(PersonEntry::assignment);
        let objects = self.objects.iter().flatten().map(ObjectEntry::assignment);
        persons.chain(objects)
    }

    /// Checks that the stated super location/event are ancestors of the
    /// record's location/event. Missing columns are not checked.
    pub fn check_super_chains(&self, containment: &Containment) -> Result<(), ContextError> {
        if let (Some(loc), Some(sup)) = (&self.location, &self.super_location) {
            check_chain(loc, sup, &containment.locations)?;
        }
        if let (Some(ev), Some(sup)) = (&self.event, &self.super_event) {
            check_chain(ev, sup, &containment.events)?;
        }
        Ok(())
    }
}

fn check_chain(id: &str, expected: &str, map: &ParentMap) -> Result<(), ContextError> {
    let chain = map.chain(id)?;
    if chain.iter().any(|c| c == expected) {
        Ok(())
    } else {
        Err(ContextError::SuperChain {
            id: id.to_string(),
            expected: expected.to_string(),
            chain,
        })
    }
}

/// Child to parent map over location or event ids. Acyclic by construction.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "BTreeMap<String, Option<String>>",
    into = "BTreeMap<String, Option<String>>"
)]
pub struct ParentMap {
    parents: BTreeMap<String, Option<String>>,
}

impl ParentMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `id` with an optional parent, rejecting inserts that would
    /// close a cycle.
    pub fn insert(&mut self, id: impl Into<String>, parent: Option<String>) -> Result<(), ContextError> {
        let id = id.into();
        if let Some(p) = &parent {
            let mut path = vec![id.clone()];
            let mut cur = Some(p.clone());
            while let Some(c) = cur {
                path.push(c.clone());
                if c == id {
                    return Err(ContextError::Cycle(path));
                }
                cur = self.parents.get(&c).cloned().flatten();
            }
        }
        self.parents.insert(id, parent);
        Ok(())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.parents.contains_key(id)
    }

    pub fn parent(&self, id: &str) -> Option<&str> {
        self.parents.get(id).and_then(|p| p.as_deref())
    }

    /// Ancestors of `id`, from the immediate parent up to the topmost one.
    pub fn chain(&self, id: &str) -> Result<Vec<String>, ContextError> {
        let mut cur = match self.parents.get(id) {
            None => return Err(ContextError::UnknownId(id.to_string())),
            Some(p) => p.clone(),
        };
        let mut chain: Vec<String> = Vec::new();
        while let Some(c) = cur {
            if c == id || chain.contains(&c) {
                let mut path = vec![id.to_string()];
                path.extend(chain);
                path.push(c);
                return Err(ContextError::Cycle(path));
            }
            cur = self.parents.get(&c).cloned().flatten();
            chain.push(c);
        }
        Ok(chain)
    }

    /// The topmost ancestor of `id`, or `id` itself when it has no parent.
    pub fn top(&self, id: &str) -> Result<String, ContextError> {
        Ok(self.chain(id)?.pop().unwrap_or_else(|| id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.parents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parents.is_empty()
    }
}

impl TryFrom<BTreeMap<String, Option<String>>> for ParentMap {
    type Error = ContextError;

    fn try_from(raw: BTreeMap<String, Option<String>>) -> Result<Self, Self::Error> {
        let mut map = ParentMap::new();
        for (id, parent) in raw {
            map.insert(id, parent)?;
        }
        Ok(map)
    }
}

impl From<ParentMap> for BTreeMap<String, Option<String>> {
    fn from(m: ParentMap) -> Self {
        m.parents
    }
}

/// Ancestor chain of a location or event id.
pub fn super_of(id: &str, map: &ParentMap) -> Result<Vec<String>, ContextError> {
    map.chain(id)
}

/// Location and event containment used to check record super chains.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub locations: ParentMap,
    pub events: ParentMap,
}

impl Containment {
    pub fn from_world(locations: &[LocationRef], events: &[EventInstance]) -> Result<Self, ContextError> {
        fn add_event(e: &EventInstance, nested_parent: Option<&str>, map: &mut ParentMap) -> Result<(), ContextError> {
            let parent = e.super_event.clone().or_else(|| nested_parent.map(str::to_string));
            map.insert(&e.id, parent)?;
            for sub in &e.sub_events {
                add_event(sub, Some(&e.id), map)?;
            }
            Ok(())
        }
        let mut c = Containment::default();
        for l in locations {
            c.locations.insert(&l.id, l.parent.clone())?;
        }
        for e in events {
            add_event(e, None, &mut c.events)?;
        }
        Ok(c)
    }
}

/// The time-ordered sequence of stream records. Timestamps are strictly
/// increasing.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StreamingContext {
    records: Vec<StreamRecord>,
}

impl StreamingContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[StreamRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn last(&self) -> Option<&StreamRecord> {
        self.records.last()
    }

    /// Appends in place; `self` is unchanged on error.
    pub fn push(&mut self, record: StreamRecord, containment: &Containment) -> Result<(), ContextError> {
        if let Some(last) = self.records.last() {
            if !record.ts.is_after(&last.ts) {
                return Err(ContextError::NonMonotone {
                    last: last.ts,
                    new: record.ts,
                });
            }
        }
        record.check_super_chains(containment)?;
        self.records.push(record);
        Ok(())
    }

    /// Builds a context from records in the given order, validating each.
    pub fn from_records(
        records: impl IntoIterator<Item = StreamRecord>,
        containment: &Containment,
    ) -> Result<Self, ContextError> {
        let mut s = StreamingContext::new();
        for r in records {
            s.push(r, containment)?;
        }
        Ok(s)
    }

    /// A window over a subset of records; order is preserved.
    pub fn window(&self, range: std::ops::Range<usize>) -> StreamingContext {
        StreamingContext {
            records: self.records[range].to_vec(),
        }
    }

    /// Builds a window without any validation. Used for pattern analysis of
    /// arbitrary record collections.
    pub fn unchecked(records: Vec<StreamRecord>) -> Self {
        StreamingContext { records }
    }
}

/// Returns a new context with `record` appended.
pub fn append_record(
    s: &StreamingContext,
    record: StreamRecord,
    containment: &Containment,
) -> Result<StreamingContext, ContextError> {
    let mut next = s.clone();
    next.push(record, containment)?;
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ts(h: u32, m: u32) -> Timestamp {
        Timestamp::utc(2021, 6, 2, h, m, 0).unwrap()
    }

    fn travel_containment() -> Containment {
        let mut c = Containment::default();
        c.locations.insert("Trentino", None).unwrap();
        c.locations.insert("Trento", Some("Trentino".into())).unwrap();
        c.locations.insert("Train 1", Some("Trentino".into())).unwrap();
        c.locations.insert("Roads 2", Some("Trento".into())).unwrap();
        c.locations.insert("Detached", None).unwrap();
        c.events.insert("Travel 1", None).unwrap();
        c.events.insert("Take Train", Some("Travel 1".into())).unwrap();
        c.events.insert("Walk", Some("Travel 1".into())).unwrap();
        c
    }

    fn record(h: u32, m: u32, location: &str) -> StreamRecord {
        StreamRecord {
            super_location: Some("Trentino".into()),
            super_event: Some("Travel 1".into()),
            location: Some(location.into()),
            event: Some("Walk".into()),
            ..StreamRecord::empty(ts(h, m))
        }
    }

    #[test]
    fn super_of_examples() {
        let c = travel_containment();
        assert_eq!(super_of("Train 1", &c.locations).unwrap(), vec!["Trentino"]);
        assert_eq!(super_of("Roads 2", &c.locations).unwrap(), vec!["Trento", "Trentino"]);
        assert!(super_of("Trentino", &c.locations).unwrap().is_empty());
        assert_eq!(super_of("Take Train", &c.events).unwrap(), vec!["Travel 1"]);
        assert_eq!(
            super_of("Nowhere", &c.locations),
            Err(ContextError::UnknownId("Nowhere".into()))
        );
    }

    #[test]
    fn cycle_rejected_at_insert() {
        let mut m = ParentMap::new();
        m.insert("a", Some("b".into())).unwrap();
        m.insert("b", Some("c".into())).unwrap();
        let err = m.insert("c", Some("a".into())).unwrap_err();
        assert_eq!(
            err,
            ContextError::Cycle(vec!["c".into(), "a".into(), "b".into(), "c".into()])
        );
        assert!(m.insert("d", Some("d".into())).is_err());
        let raw: BTreeMap<String, Option<String>> = [
            ("x".to_string(), Some("y".to_string())),
            ("y".to_string(), Some("x".to_string())),
        ]
        .into();
        assert!(ParentMap::try_from(raw).is_err());
    }

    #[test]
    fn append_accepts_increasing_timestamps() {
        let c = travel_containment();
        let s = append_record(&StreamingContext::new(), record(12, 15, "Train 1"), &c).unwrap();
        let s = append_record(&s, record(12, 30, "Roads 2"), &c).unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn append_rejects_equal_timestamp() {
        let c = travel_containment();
        let s = append_record(&StreamingContext::new(), record(12, 15, "Train 1"), &c).unwrap();
        let err = append_record(&s, record(12, 15, "Roads 2"), &c).unwrap_err();
        assert_eq!(
            err,
            ContextError::NonMonotone {
                last: ts(12, 15),
                new: ts(12, 15)
            }
        );
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn append_rejects_detached_location() {
        let c = travel_containment();
        let err = append_record(&StreamingContext::new(), record(12, 15, "Detached"), &c).unwrap_err();
        assert!(matches!(err, ContextError::SuperChain { .. }));
    }

    #[test]
    fn missing_columns_skip_chain_checks() {
        let c = travel_containment();
        let s = append_record(&StreamingContext::new(), StreamRecord::empty(ts(12, 0)), &c).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn record_json_uses_null_for_missing() {
        let r = StreamRecord::empty(ts(12, 0));
        let v = serde_json::to_value(&r).unwrap();
        assert!(v["persons"].is_null());
        assert!(v["location"].is_null());
        let back: StreamRecord = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    proptest! {
        #[test]
        fn accepted_streams_are_strictly_increasing(offsets in proptest::collection::vec(0i64..50, 1..30)) {
            let c = Containment::default();
            let base = ts(0, 0);
            let mut s = StreamingContext::new();
            for o in offsets {
                let _ = s.push(StreamRecord::empty(base.plus_seconds(o * 60)), &c);
            }
            for pair in s.records().windows(2) {
                prop_assert!(pair[1].ts.is_after(&pair[0].ts));
            }
        }
    }
}
