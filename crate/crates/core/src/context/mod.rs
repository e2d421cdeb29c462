//! Objective, subjective and streaming context.

mod entities;
mod geometry;
mod pattern;
mod stream;
mod subjective;
mod world;

pub use entities::{
    validate_actions, validate_events, validate_locations, ActionInstance, EventInstance, FunctionAssignment,
    InternalStates, LocationRef, Mood, ObjectRef, PersonRef, Stress,
};
pub use geometry::{spatial_relation, Coordinates, Relation, SpatialParams, SpatialTarget, Volume};
pub use pattern::{classify_pattern, ContextPattern, PatternError, PatternFocus};
pub use stream::{
    append_record, super_of, Containment, ObjectEntry, ParentMap, PersonEntry, StreamRecord, StreamingContext,
};
pub use subjective::{derive_subjective, ObjectiveContext, SubjectiveContext};
pub use world::World;

use thiserror::Error;

use crate::time::Timestamp;

#[derive(Debug, Error, PartialEq)]
pub enum ContextError {
    #[error("coordinate values must be finite")]
    NonFinite,
    #[error("volume extents must be > 0 (got {0}, {1}, {2})")]
    BadVolume(f64, f64, f64),
    #[error("frame mismatch: `{0}` vs `{1}`")]
    FrameMismatch(String, String),
    #[error("near threshold must be > 0 (got {0})")]
    BadThreshold(f64),
    #[error("heading must be a finite non-zero vector")]
    BadHeading,
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("cycle through `{}`", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("timestamp {new} is not after the last record at {last}")]
    NonMonotone { last: Timestamp, new: Timestamp },
    #[error("`{id}` does not have `{expected}` among its ancestors {chain:?}")]
    SuperChain {
        id: String,
        expected: String,
        chain: Vec<String>,
    },
    #[error("observer invariant violated: {0}")]
    Observer(String),
    #[error("interval of `{0}` ends before it begins")]
    Interval(String),
}
