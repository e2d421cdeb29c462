use serde::{Deserialize, Serialize};

use super::{Channel, SensorReading};
use crate::time::Timestamp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregator {
    Mean,
    Count,
    Variance,
}

impl Aggregator {
    fn name(&self) -> &'static str {
        match self {
            Aggregator::Mean => "mean",
            Aggregator::Count => "count",
            Aggregator::Variance => "variance",
        }
    }
}

/// Window length and the aggregates to compute, in manifest order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub length_s: i64,
    pub features: Vec<(Channel, Aggregator)>,
}

impl WindowSpec {
    /// Channels in order of first appearance.
    pub fn channels(&self) -> Vec<&Channel> {
        let mut out: Vec<&Channel> = Vec::new();
        for (c, _) in &self.features {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    /// Feature names: one per aggregate, then one `<channel>.empty` flag per
    /// channel.
    pub fn manifest(&self) -> Vec<String> {
        let mut names: Vec<String> = self.features.iter().map(|(c, a)| format!("{c}.{}", a.name())).collect();
        names.extend(self.channels().into_iter().map(|c| format!("{c}.empty")));
        names
    }

    pub fn dim(&self) -> usize {
        self.features.len() + self.channels().len()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub values: Vec<f64>,
    pub begin: Timestamp,
    pub end: Timestamp,
    pub manifest: Vec<String>,
}

/// Aggregates the readings falling in `[begin, end)`; readings outside the
/// window are ignored. A channel without readings yields 0 for each of its
/// aggregates and sets its empty flag to 1.
pub fn aggregate_window(
    readings: &[SensorReading],
    begin: Timestamp,
    end: Timestamp,
    spec: &WindowSpec,
) -> FeatureVector {
    let inside = |r: &&SensorReading| r.ts.instant() >= begin.instant() && r.ts.instant() < end.instant();
    let values_of = |c: &Channel| -> Vec<f64> {
        readings
            .iter()
            .filter(inside)
            .filter(|r| &r.channel == c)
            .map(|r| r.value)
            .collect()
    };
    let mut values = Vec::with_capacity(spec.dim());
    for (channel, agg) in &spec.features {
        let xs = values_of(channel);
        let v = if xs.is_empty() {
            0.0
        } else {
            let n = xs.len() as f64;
            let mean = xs.iter().sum::<f64>() / n;
            match agg {
                Aggregator::Mean => mean,
                Aggregator::Count => n,
                Aggregator::Variance => xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n,
            }
        };
        values.push(v);
    }
    for channel in spec.channels() {
        values.push(if values_of(channel).is_empty() { 1.0 } else { 0.0 });
    }
    FeatureVector {
        values,
        begin,
        end,
        manifest: spec.manifest(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(s: i64) -> Timestamp {
        Timestamp::utc(2021, 6, 2, 12, 0, 0).unwrap().plus_seconds(s)
    }

    fn bt(s: i64, v: f64) -> SensorReading {
        SensorReading {
            ts: at(s),
            channel: Channel::BluetoothCount,
            value: v,
        }
    }

    fn spec() -> WindowSpec {
        WindowSpec {
            length_s: 1800,
            features: vec![
                (Channel::BluetoothCount, Aggregator::Mean),
                (Channel::BluetoothCount, Aggregator::Count),
                (Channel::BluetoothCount, Aggregator::Variance),
                (Channel::AccelerometerMagnitude, Aggregator::Mean),
            ],
        }
    }

    #[test]
    fn bluetooth_mean() {
        let f = aggregate_window(&[bt(0, 3.0), bt(60, 5.0), bt(120, 4.0)], at(0), at(1800), &spec());
        assert_eq!(f.values[0], 4.0);
        assert_eq!(f.values[1], 3.0);
        assert!((f.values[2] - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(&f.values[3..], &[0.0, 0.0, 1.0]);
        assert_eq!(
            f.manifest,
            [
                "bluetooth_count.mean",
                "bluetooth_count.count",
                "bluetooth_count.variance",
                "accelerometer_magnitude.mean",
                "bluetooth_count.empty",
                "accelerometer_magnitude.empty"
            ]
        );
    }

    #[test]
    fn empty_window_is_zeros_and_flags() {
        let f = aggregate_window(&[], at(0), at(1800), &spec());
        assert_eq!(f.values, vec![0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        assert_eq!(f.values.len(), spec().dim());
    }

    #[test]
    fn readings_outside_window_ignored() {
        let f = aggregate_window(&[bt(-1, 100.0), bt(10, 2.0), bt(1800, 100.0)], at(0), at(1800), &spec());
        assert_eq!(f.values[0], 2.0);
    }
}
