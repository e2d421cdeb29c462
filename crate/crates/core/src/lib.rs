//! Personal context modeling.
//!
//! The crate is organised bottom-up:
//!
//! - [`context`]: typed objective, subjective and streaming context records,
//!   spatial relations and the location/event composition patterns.
//! - [`kg`]: the entity type graph (schema) and entity graph (instances),
//!   validation, per-record snapshots and recognized-context updates.
//! - [`hierarchy`]: compilation of a schema/instance graph pair into a rooted,
//!   transitively reduced concept DAG, plus JSON/DOT export.
//! - [`labels`]: indicator vectors over a compiled hierarchy and the
//!   upward-closure consistency constraint.
//! - [`harness`]: a synthetic sensor stream, window aggregation, query
//!   strategies, per-node online classifiers and evaluation.
//! - [`io`]: versioned JSON/JSONL documents and run configuration.

pub mod context;
pub mod harness;
pub mod hierarchy;
pub mod io;
pub mod kg;
pub mod labels;
pub mod report;
pub mod time;

pub use report::{Finding, FindingKind, ValidationReport};
pub use time::Timestamp;
