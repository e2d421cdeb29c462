use std::collections::{BTreeMap, BTreeSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Channel, HarnessError, SensorReading};
use crate::context::{Coordinates, ObjectEntry, PersonEntry, StreamRecord};
use crate::kg::{Eg, Etg};
use crate::time::Timestamp;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelParams {
    pub mean: f64,
    pub variance: f64,
}

/// The context columns of a segment; instantiated once per window.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordTemplate {
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

impl RecordTemplate {
    pub fn at(&self, ts: Timestamp) -> StreamRecord {
        StreamRecord {
            ts,
            super_location: self.super_location.clone(),
            super_event: self.super_event.clone(),
            location: self.location.clone(),
            event: self.event.clone(),
            coo_me: self.coo_me.clone(),
            my_actions: self.my_actions.clone(),
            persons: self.persons.clone(),
            objects: self.objects.clone(),
        }
    }

    fn entity_refs(&self) -> Vec<&str> {
        let mut out: Vec<&str> = [&self.super_location, &self.super_event, &self.location, &self.event]
            .into_iter()
            .flatten()
            .map(String::as_str)
            .collect();
        out.extend(self.my_actions.iter().flatten().map(String::as_str));
        for p in self.persons.iter().flatten() {
            out.extend([p.holder.as_str(), p.beneficiary.as_str()]);
            out.extend(p.actions.iter().map(String::as_str));
        }
        for o in self.objects.iter().flatten() {
            out.extend([o.holder.as_str(), o.beneficiary.as_str()]);
        }
        out
    }
}

/// A stretch of time with a fixed context and stationary sensor statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub begin: Timestamp,
    pub end: Timestamp,
    pub record: RecordTemplate,
    pub channels: BTreeMap<Channel, ChannelParams>,
}

fn one() -> u32 {
    1
}

/// A scripted timeline. With `cycles > 1` the segment list is replayed,
/// shifted each time by the span from the first begin to the last end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioScript {
    pub seed: u64,
    pub sample_interval_s: i64,
    #[serde(default = "one")]
    pub cycles: u32,
    pub segments: Vec<Segment>,
}

impl ScenarioScript {
    pub fn channels(&self) -> BTreeSet<&Channel> {
        self.segments.iter().flat_map(|s| s.channels.keys()).collect()
    }

    pub fn check(&self, eg: &Eg) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::Scenario(m));
        if self.sample_interval_s <= 0 {
            return bad(format!(
                "sample interval must be positive, got {}",
                self.sample_interval_s
            ));
        }
        if self.segments.is_empty() {
            return bad("no segments".into());
        }
        if self.cycles == 0 {
            return bad("cycles must be at least 1".into());
        }
        let mut prev_end: Option<Timestamp> = None;
        for (i, s) in self.segments.iter().enumerate() {
            if s.begin.instant() >= s.end.instant() {
                return bad(format!("segment {i} does not end after it begins"));
            }
            if let Some(p) = prev_end {
                if s.begin.instant() < p.instant() {
                    return bad(format!("segment {i} overlaps the previous one"));
                }
            }
            prev_end = Some(s.end);
            for (c, p) in &s.channels {
                if !p.mean.is_finite() || !p.variance.is_finite() || p.variance < 0.0 {
                    return bad(format!(
                        "segment {i}: channel {c} needs a finite mean and a non-negative variance"
                    ));
                }
            }
        }
        let index = eg.entity_index();
        let unknown: BTreeSet<&str> = self
            .segments
            .iter()
            .flat_map(|s| s.record.entity_refs())
            .filter(|id| !index.contains_key(id))
            .collect();
        if !unknown.is_empty() {
            return Err(HarnessError::UnknownEntities(
                unknown.into_iter().map(String::from).collect(),
            ));
        }
        Ok(())
    }

    fn span_s(&self) -> i64 {
        let first = self.segments.first().map(|s| s.begin);
        let last = self.segments.last().map(|s| s.end);
        match (first, last) {
            (Some(a), Some(b)) => b.seconds_since(&a),
            _ => 0,
        }
    }
}

/// One window of generated data: the raw readings and the record that was
/// true while they were taken.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowBatch {
    pub begin: Timestamp,
    pub end: Timestamp,
    pub readings: Vec<SensorReading>,
    pub truth: StreamRecord,
}

/// Expands a script into windows of `window_s` seconds. Windows tile each
/// segment from its begin; the last window of a segment may be shorter.
/// Readings are `mean + sqrt(variance) * N(0, 1)` drawn from a ChaCha stream
/// seeded with the script seed, so equal inputs give equal output.
pub fn generate_stream(
    script: &ScenarioScript,
    window_s: i64,
    _etg: &Etg,
    eg: &Eg,
) -> Result<Vec<WindowBatch>, HarnessError> {
    if window_s <= 0 {
        return Err(HarnessError::Scenario(format!(
            "window length must be positive, got {window_s}"
        )));
    }
    script.check(eg)?;
    let mut rng = ChaCha8Rng::seed_from_u64(script.seed);
    let span = script.span_s();
    let mut out = Vec::new();
    for cycle in 0..i64::from(script.cycles) {
        let shift = cycle * span;
        for seg in &script.segments {
            let (begin, end) = (seg.begin.plus_seconds(shift), seg.end.plus_seconds(shift));
            let mut w = begin;
            while w.instant() < end.instant() {
                let w_end = if w.plus_seconds(window_s).instant() < end.instant() {
                    w.plus_seconds(window_s)
                } else {
                    end
                };
                let mut readings = Vec::new();
                let mut t = w;
                while t.instant() < w_end.instant() {
                    for (channel, p) in &seg.channels {
                        let z: f64 = StandardNormal.sample(&mut rng);
                        let value = if p.variance == 0.0 {
                            p.mean
                        } else {
                            p.mean + p.variance.sqrt() * z
                        };
                        readings.push(SensorReading {
                            ts: t,
                            channel: channel.clone(),
                            value,
                        });
                    }
                    t = t.plus_seconds(script.sample_interval_s);
                }
                out.push(WindowBatch {
                    begin: w,
                    end: w_end,
                    readings,
                    truth: seg.record.at(w),
                });
                w = w_end;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::Entity;

    fn at(min: i64) -> Timestamp {
        Timestamp::utc(2021, 6, 2, 8, 0, 0).unwrap().plus_seconds(min * 60)
    }

    fn eg() -> Eg {
        Eg {
            at: None,
            entities: vec![
                Entity::new("Home", "Home", "Location"),
                Entity::new("Road", "Road", "Location"),
            ],
            triples: Default::default(),
        }
    }

    fn etg() -> Etg {
        serde_json::from_str(r#"{"me_etype":"Me","etypes":[],"properties":[]}"#).unwrap()
    }

    fn script(variance: f64) -> ScenarioScript {
        let seg = |b, e, loc: &str, mean| Segment {
            begin: at(b),
            end: at(e),
            record: RecordTemplate {
                location: Some(loc.into()),
                ..Default::default()
            },
            channels: [(Channel::AccelerometerMagnitude, ChannelParams { mean, variance })].into(),
        };
        ScenarioScript {
            seed: 7,
            sample_interval_s: 60,
            cycles: 1,
            segments: vec![seg(0, 60, "Home", 0.1), seg(60, 75, "Road", 1.5)],
        }
    }

    #[test]
    fn windows_tile_segments() {
        let out = generate_stream(&script(0.2), 1800, &etg(), &eg()).unwrap();
        let bounds: Vec<_> = out.iter().map(|w| (w.begin, w.end)).collect();
        assert_eq!(bounds, vec![(at(0), at(30)), (at(30), at(60)), (at(60), at(75))]);
        assert_eq!(out[0].readings.len(), 30);
        assert_eq!(out[2].readings.len(), 15);
        assert_eq!(out[2].truth.location.as_deref(), Some("Road"));
        assert_eq!(out[1].truth.ts, at(30));
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = serde_json::to_string(&generate_stream(&script(0.2), 1800, &etg(), &eg()).unwrap()).unwrap();
        let b = serde_json::to_string(&generate_stream(&script(0.2), 1800, &etg(), &eg()).unwrap()).unwrap();
        assert_eq!(a, b);
        let mut other = script(0.2);
        other.seed = 8;
        let c = serde_json::to_string(&generate_stream(&other, 1800, &etg(), &eg()).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_variance_is_constant() {
        let out = generate_stream(&script(0.0), 1800, &etg(), &eg()).unwrap();
        assert!(out[0].readings.iter().all(|r| r.value == 0.1));
        assert!(out[2].readings.iter().all(|r| r.value == 1.5));
    }

    #[test]
    fn cycles_repeat_timeline() {
        let mut s = script(0.0);
        s.cycles = 3;
        let out = generate_stream(&s, 1800, &etg(), &eg()).unwrap();
        assert_eq!(out.len(), 9);
        assert_eq!(out[3].begin, at(75));
        assert_eq!(out[8].end, at(225));
    }

    #[test]
    fn rejects_bad_scripts() {
        let mut s = script(0.1);
        s.segments[1].begin = at(59);
        assert!(matches!(
            generate_stream(&s, 1800, &etg(), &eg()),
            Err(HarnessError::Scenario(_))
        ));
        let mut s = script(0.1);
        s.segments[0].record.location = Some("Mars".into());
        assert_eq!(
            generate_stream(&s, 1800, &etg(), &eg()),
            Err(HarnessError::UnknownEntities(vec!["Mars".into()]))
        );
        let mut s = script(0.1);
        s.segments[0].channels.values_mut().for_each(|p| p.variance = -1.0);
        assert!(generate_stream(&s, 1800, &etg(), &eg()).is_err());
    }
}
