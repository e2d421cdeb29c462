use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::StreamingContext;

/// How locations and events compose within a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ContextPattern {
    /// 1L1E, e.g. a lecture in a classroom.
    OneLocOneEvent,
    /// 1LME, e.g. a sequence of meetings in one office.
    OneLocManyEvents,
    /// 1E1L, the single-location single-event case seen from the event side.
    OneEventOneLoc,
    /// 1EML, e.g. a travel across several places.
    OneEventManyLocs,
}

impl ContextPattern {
    pub fn short_name(&self) -> &'static str {
        match self {
            ContextPattern::OneLocOneEvent => "1L1E",
            ContextPattern::OneLocManyEvents => "1LME",
            ContextPattern::OneEventOneLoc => "1E1L",
            ContextPattern::OneEventManyLocs => "1EML",
        }
    }
}

/// Which side the (1, 1) case is named after.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternFocus {
    #[default]
    Location,
    Event,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("empty window")]
    EmptyWindow,
    #[error("window has no location")]
    NoLocation,
    #[error("window has no event")]
    NoEvent,
    #[error("unclassified composite: {locations} locations and {events} events")]
    UnclassifiedComposite { locations: usize, events: usize },
}

/// Classifies a window by the number of distinct locations and top-level
/// events it mentions.
///
/// A record's location is its most specific location (falling back to the
/// super location when missing). A record's event is its super event when
/// present, otherwise its own event. Records missing both are ignored for
/// that count. The result only depends on the set of records.
pub fn classify_pattern(window: &StreamingContext, focus: PatternFocus) -> Result<ContextPattern, PatternError> {
    if window.is_empty() {
        return Err(PatternError::EmptyWindow);
    }
    let mut locations = BTreeSet::new();
    let mut events = BTreeSet::new();
    for r in window.records() {
        if let Some(l) = r.location.as_ref().or(r.super_location.as_ref()) {
            locations.insert(l.as_str());
        }
        if let Some(e) = r.super_event.as_ref().or(r.event.as_ref()) {
            events.insert(e.as_str());
        }
    }
    match (locations.len(), events.len()) {
        (0, _) => Err(PatternError::NoLocation),
        (_, 0) => Err(PatternError::NoEvent),
        (1, 1) => Ok(match focus {
            PatternFocus::Location => ContextPattern::OneLocOneEvent,
            PatternFocus::Event => ContextPattern::OneEventOneLoc,
        }),
        (1, _) => Ok(ContextPattern::OneLocManyEvents),
        (_, 1) => Ok(ContextPattern::OneEventManyLocs),
        (l, e) => Err(PatternError::UnclassifiedComposite {
            locations: l,
            events: e,
        }),
    }
}
