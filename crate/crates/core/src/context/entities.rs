use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{ContextError, Coordinates, Volume};
use crate::report::{FindingKind, ValidationReport};
use crate::time::Timestamp;

pub type Properties = BTreeMap<String, String>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocationRef {
    pub id: String,
    pub name: String,
    pub origin: Coordinates,
    pub volume: Volume,
    /// The enclosing location (`InLocation`).
    #[serde(default)]
    pub parent: Option<String>,
    #[serde(default)]
    pub visual_properties: Properties,
}

impl LocationRef {
    pub fn new(id: impl Into<String>, name: impl Into<String>, origin: Coordinates, volume: Volume) -> Self {
        LocationRef {
            id: id.into(),
            name: name.into(),
            origin,
            volume,
            parent: None,
            visual_properties: Properties::new(),
        }
    }

    pub fn with_parent(mut self, parent: impl Into<String>) -> Self {
        self.parent = Some(parent.into());
        self
    }

    /// Lower and upper corners of the axis-aligned box.
    pub fn bounds(&self) -> ([f64; 3], [f64; 3]) {
        let o = &self.origin;
        let v = &self.volume;
        ([o.x, o.y, o.z], [o.x + v.dx, o.y + v.dy, o.z + v.dz])
    }

    pub fn contains_box(&self, inner: &LocationRef) -> bool {
        let (lo, hi) = self.bounds();
        let (ilo, ihi) = inner.bounds();
        (0..3).all(|i| ilo[i] >= lo[i] && ihi[i] <= hi[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mood {
    Positive,
    Neutral,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stress {
    Low,
    Medium,
    High,
}

/// Open key/value map of physical and mental states. `pain`, `mood` and
/// `stress` have typed accessors; any other key is stored verbatim.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InternalStates(pub BTreeMap<String, String>);

impl InternalStates {
    pub const PAIN: &'static str = "pain";
    pub const MOOD: &'static str = "mood";
    pub const STRESS: &'static str = "stress";

    pub fn in_pain(&self) -> Option<bool> {
        self.0.get(Self::PAIN).and_then(|v| v.parse().ok())
    }

    pub fn mood(&self) -> Option<Mood> {
        self.typed(Self::MOOD)
    }

    pub fn stress(&self) -> Option<Stress> {
        self.typed(Self::STRESS)
    }

    pub fn set_pain(&mut self, pain: bool) {
        self.0.insert(Self::PAIN.into(), pain.to_string());
    }

    pub fn set_mood(&mut self, mood: Mood) {
        self.set_typed(Self::MOOD, mood);
    }

    pub fn set_stress(&mut self, stress: Stress) {
        self.set_typed(Self::STRESS, stress);
    }

    fn typed<T: for<'de> Deserialize<'de>>(&self, key: &str) -> Option<T> {
        let raw = self.0.get(key)?;
        serde_json::from_value(serde_json::Value::String(raw.clone())).ok()
    }

    fn set_typed<T: Serialize>(&mut self, key: &str, value: T) {
        if let Ok(serde_json::Value::String(s)) = serde_json::to_value(value) {
            self.0.insert(key.into(), s);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PersonRef {
    pub id: String,
    pub name: String,
    pub coords: Coordinates,
    #[serde(default)]
    pub visual_properties: Properties,
    #[serde(default)]
    pub internal_states: InternalStates,
    #[serde(default)]
    pub is_me: bool,
}

impl PersonRef {
    pub fn new(id: impl Into<String>, name: impl Into<String>, coords: Coordinates) -> Self {
        PersonRef {
            id: id.into(),
            name: name.into(),
            coords,
            visual_properties: Properties::new(),
            internal_states: InternalStates::default(),
            is_me: false,
        }
    }

    pub fn observer(id: impl Into<String>, name: impl Into<String>, coords: Coordinates) -> Self {
        PersonRef {
            is_me: true,
            ..PersonRef::new(id, name, coords)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectRef {
    pub id: String,
    pub name: String,
    pub coords: Coordinates,
    #[serde(default)]
    pub visual_properties: Properties,
}

impl ObjectRef {
    pub fn new(id: impl Into<String>, name: impl Into<String>, coords: Coordinates) -> Self {
        ObjectRef {
            id: id.into(),
            name: name.into(),
            coords,
            visual_properties: Properties::new(),
        }
    }
}

/// A function the observer assigns to an entity: `holder` plays
/// `function_name` for `beneficiary`. Written `FriendOf(Xiaoyue, Haonan)`
/// when Haonan is the friend (holder) of Xiaoyue (beneficiary).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FunctionAssignment {
    #[serde(rename = "function")]
    pub function_name: String,
    pub holder: String,
    pub beneficiary: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_from: Option<Timestamp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valid_to: Option<Timestamp>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub self_directed: bool,
}

impl FunctionAssignment {
    pub fn new(function_name: impl Into<String>, beneficiary: impl Into<String>, holder: impl Into<String>) -> Self {
        FunctionAssignment {
            function_name: function_name.into(),
            holder: holder.into(),
            beneficiary: beneficiary.into(),
            valid_from: None,
            valid_to: None,
            self_directed: false,
        }
    }

    pub fn valid_at(&self, ts: &Timestamp) -> bool {
        ts.within(self.valid_from.as_ref(), self.valid_to.as_ref())
    }

    pub fn validate(&self, report: &mut ValidationReport) {
        if self.function_name.trim().is_empty() {
            report.push(FindingKind::Schema, &self.holder, "function name is empty");
        }
        if self.holder == self.beneficiary && !self.self_directed {
            report.push(
                FindingKind::Schema,
                &self.holder,
                format!(
                    "{} assigns {} to itself without being self-directed",
                    self.function_name, self.holder
                ),
            );
        }
        if let (Some(from), Some(to)) = (&self.valid_from, &self.valid_to) {
            if from.is_after(to) {
                report.push(
                    FindingKind::Interval,
                    &self.holder,
                    format!("{} validity ends before it starts", self.function_name),
                );
            }
        }
    }
}

impl std::fmt::Display for FunctionAssignment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}({}, {})", self.function_name, self.beneficiary, self.holder)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionInstance {
    pub name: String,
    pub actor: String,
    pub begin: Timestamp,
    pub end: Timestamp,
    #[serde(default)]
    pub means: Vec<String>,
    #[serde(default)]
    pub sub_actions: Vec<ActionInstance>,
    #[serde(default)]
    pub visual_properties: Properties,
    #[serde(default)]
    pub functions: Vec<FunctionAssignment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventInstance {
    pub id: String,
    pub name: String,
    /// The enclosing event (`InEvent`).
    #[serde(default)]
    pub super_event: Option<String>,
    pub location: String,
    pub begin: Timestamp,
    pub end: Timestamp,
    #[serde(default)]
    pub sub_events: Vec<EventInstance>,
    #[serde(default)]
    pub participants: Vec<String>,
}

/// Checks interval ordering and sub-interval nesting of an action tree.
pub fn validate_actions(actions: &[ActionInstance]) -> ValidationReport {
    fn walk(a: &ActionInstance, parent: Option<&ActionInstance>, report: &mut ValidationReport) {
        if a.begin.is_after(&a.end) {
            report.push(FindingKind::Interval, &a.name, "action ends before it begins");
        }
        if let Some(p) = parent {
            if !(a.begin.within(Some(&p.begin), Some(&p.end)) && a.end.within(Some(&p.begin), Some(&p.end))) {
                report.push(
                    FindingKind::Interval,
                    &a.name,
                    format!("sub-action interval exceeds `{}`", p.name),
                );
            }
        }
        for f in &a.functions {
            f.validate(report);
        }
        for sub in &a.sub_actions {
            walk(sub, Some(a), report);
        }
    }
    let mut report = ValidationReport::new();
    for a in actions {
        walk(a, None, &mut report);
    }
    report
}

/// Checks intervals, sub-event nesting, `super_event` references and their
/// acyclicity for a set of events. Nested sub-events are included in the
/// id space.
pub fn validate_events(events: &[EventInstance]) -> ValidationReport {
    fn collect<'a>(
        e: &'a EventInstance,
        parent: Option<&'a EventInstance>,
        out: &mut Vec<(&'a EventInstance, Option<&'a EventInstance>)>,
    ) {
        out.push((e, parent));
        for sub in &e.sub_events {
            collect(sub, Some(e), out);
        }
    }
    let mut all = Vec::new();
    for e in events {
        collect(e, None, &mut all);
    }
    let mut report = ValidationReport::new();
    let mut ids = BTreeMap::new();
    for (e, parent) in &all {
        if ids.insert(e.id.as_str(), *e).is_some() {
            report.push(FindingKind::DuplicateId, &e.id, "duplicate event id");
        }
        if e.begin.is_after(&e.end) {
            report.push(FindingKind::Interval, &e.id, "event ends before it begins");
        }
        if let Some(p) = parent {
            if !(e.begin.within(Some(&p.begin), Some(&p.end)) && e.end.within(Some(&p.begin), Some(&p.end))) {
                report.push(
                    FindingKind::Interval,
                    &e.id,
                    format!("sub-event interval exceeds `{}`", p.id),
                );
            }
        }
    }
    for (e, _) in &all {
        if let Some(sup) = &e.super_event {
            match ids.get(sup.as_str()) {
                None => report.push(
                    FindingKind::UnknownReference,
                    &e.id,
                    format!("unknown super event `{sup}`"),
                ),
                Some(p) => {
                    if !(e.begin.within(Some(&p.begin), Some(&p.end)) && e.end.within(Some(&p.begin), Some(&p.end))) {
                        report.push(
                            FindingKind::Interval,
                            &e.id,
                            format!("interval exceeds super event `{sup}`"),
                        );
                    }
                }
            }
        }
    }
    let parents: Vec<(String, Option<String>)> =
        all.iter().map(|(e, _)| (e.id.clone(), e.super_event.clone())).collect();
    report_cycles(&parents, &mut report);
    report
}

/// Checks parent references, acyclicity, frames and geometric containment
/// of child boxes in parent boxes.
pub fn validate_locations(locations: &[LocationRef]) -> ValidationReport {
    let mut report = ValidationReport::new();
    let mut by_id = BTreeMap::new();
    for loc in locations {
        if by_id.insert(loc.id.as_str(), loc).is_some() {
            report.push(FindingKind::DuplicateId, &loc.id, "duplicate location id");
        }
        if loc.origin.check().is_err() {
            report.push(FindingKind::Geometry, &loc.id, "origin has non-finite coordinates");
        }
        if loc.volume.check().is_err() {
            report.push(FindingKind::Geometry, &loc.id, "volume extents must be > 0");
        }
    }
    for loc in locations {
        let Some(parent_id) = &loc.parent else { continue };
        match by_id.get(parent_id.as_str()) {
            None => report.push(
                FindingKind::UnknownReference,
                &loc.id,
                format!("unknown parent location `{parent_id}`"),
            ),
            Some(parent) => {
                if parent.origin.frame != loc.origin.frame {
                    report.push(
                        FindingKind::Geometry,
                        &loc.id,
                        format!(
                            "frame `{}` differs from parent frame `{}`",
                            loc.origin.frame, parent.origin.frame
                        ),
                    );
                } else if !parent.contains_box(loc) {
                    report.push(
                        FindingKind::Geometry,
                        &loc.id,
                        format!("volume is not contained in parent `{parent_id}`"),
                    );
                }
            }
        }
    }
    let parents: Vec<(String, Option<String>)> = locations.iter().map(|l| (l.id.clone(), l.parent.clone())).collect();
    report_cycles(&parents, &mut report);
    report
}

fn report_cycles(parents: &[(String, Option<String>)], report: &mut ValidationReport) {
    let map: BTreeMap<&str, Option<&str>> = parents.iter().map(|(id, p)| (id.as_str(), p.as_deref())).collect();
    let mut reported: BTreeSet<&str> = BTreeSet::new();
    for (start, _) in parents {
        let mut seen = vec![start.as_str()];
        let mut cur = start.as_str();
        while let Some(Some(next)) = map.get(cur) {
            if let Some(pos) = seen.iter().position(|s| s == next) {
                let cycle = &seen[pos..];
                let key = cycle.iter().min().copied().unwrap_or(next);
                if reported.insert(key) {
                    let mut path: Vec<&str> = cycle.to_vec();
                    path.push(next);
                    report.push(
                        FindingKind::Cycle,
                        key,
                        format!("containment cycle {}", path.join(" -> ")),
                    );
                }
                break;
            }
            seen.push(next);
            cur = next;
        }
    }
}

impl From<ContextError> for ValidationReport {
    fn from(e: ContextError) -> Self {
        let mut r = ValidationReport::new();
        r.push(FindingKind::Schema, "", e.to_string());
        r
    }
}
