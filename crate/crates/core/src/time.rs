use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Duration, FixedOffset, NaiveDate, NaiveTime, TimeZone, Utc};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A calendar date and time of day with seconds precision, carried in a
/// fixed UTC offset.
///
/// Ordering compares instants first and breaks ties on the offset so that
/// `Ord` agrees with `Eq`. Serializes as RFC 3339 and keeps the offset.
#[derive(Debug, Clone, Copy)]
pub struct Timestamp(DateTime<FixedOffset>);

impl Timestamp {
    pub fn from_datetime(dt: DateTime<FixedOffset>) -> Self {
        Timestamp(dt)
    }

    /// Builds a UTC timestamp. Returns `None` for out-of-range fields.
    pub fn utc(year: i32, month: u32, day: u32, hour: u32, minute: u32, second: u32) -> Option<Self> {
        let date = NaiveDate::from_ymd_opt(year, month, day)?;
        let time = NaiveTime::from_hms_opt(hour, minute, second)?;
        let offset = FixedOffset::east_opt(0)?;
        offset.from_local_datetime(&date.and_time(time)).single().map(Timestamp)
    }

    pub fn parse(s: &str) -> Result<Self, chrono::ParseError> {
        DateTime::parse_from_rfc3339(s).map(Timestamp)
    }

    pub fn date(&self) -> NaiveDate {
        self.0.date_naive()
    }

    pub fn time(&self) -> NaiveTime {
        self.0.time()
    }

    pub fn offset_seconds(&self) -> i32 {
        self.0.offset().local_minus_utc()
    }

    pub fn as_datetime(&self) -> DateTime<FixedOffset> {
        self.0
    }

    pub fn instant(&self) -> DateTime<Utc> {
        self.0.with_timezone(&Utc)
    }

    /// Seconds since the Unix epoch.
    pub fn unix_seconds(&self) -> i64 {
        self.0.timestamp()
    }

    pub fn plus_seconds(&self, secs: i64) -> Self {
        Timestamp(self.0 + Duration::seconds(secs))
    }

    /// Signed difference `self - other` in seconds.
    pub fn seconds_since(&self, other: &Timestamp) -> i64 {
        (self.0 - other.0).num_seconds()
    }

    pub fn is_after(&self, other: &Timestamp) -> bool {
        self.instant() > other.instant()
    }

    /// Whether `self` lies within the closed interval `[from, to]`; open ends
    /// are unbounded.
    pub fn within(&self, from: Option<&Timestamp>, to: Option<&Timestamp>) -> bool {
        let after_start = from.is_none_or(|f| self.instant() >= f.instant());
        let before_end = to.is_none_or(|t| self.instant() <= t.instant());
        after_start && before_end
    }
}

impl PartialEq for Timestamp {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Timestamp {}

impl std::hash::Hash for Timestamp {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.naive_utc().hash(state);
        self.offset_seconds().hash(state);
    }
}

impl PartialOrd for Timestamp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Timestamp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.instant()
            .cmp(&other.instant())
            .then(self.offset_seconds().cmp(&other.offset_seconds()))
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.to_rfc3339())
    }
}

impl FromStr for Timestamp {
    type Err = chrono::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Timestamp::parse(s)
    }
}

impl Serialize for Timestamp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_rfc3339())
    }
}

impl<'de> Deserialize<'de> for Timestamp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        Timestamp::parse(&raw).map_err(serde::de::Error::custom)
    }
}
