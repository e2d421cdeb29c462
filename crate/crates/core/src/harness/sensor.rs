use std::fmt;

use serde::{Deserialize, Serialize};

use crate::time::Timestamp;

/// A sensor channel. Unknown names are kept as [`Channel::Other`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub enum Channel {
    Gps,
    AccelerometerMagnitude,
    BluetoothCount,
    Other(String),
}

impl Channel {
    pub fn as_str(&self) -> &str {
        match self {
            Channel::Gps => "gps",
            Channel::AccelerometerMagnitude => "accelerometer_magnitude",
            Channel::BluetoothCount => "bluetooth_count",
            Channel::Other(s) => s,
        }
    }
}

impl From<String> for Channel {
    fn from(s: String) -> Self {
        match s.as_str() {
            "gps" => Channel::Gps,
            "accelerometer_magnitude" => Channel::AccelerometerMagnitude,
            "bluetooth_count" => Channel::BluetoothCount,
            _ => Channel::Other(s),
        }
    }
}

impl From<Channel> for String {
    fn from(c: Channel) -> Self {
        c.as_str().to_string()
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensorReading {
    pub ts: Timestamp,
    pub channel: Channel,
    pub value: f64,
}
