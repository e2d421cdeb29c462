//! Desk-scale context recognition: a synthetic sensor stream is cut into
//! windows, aggregated into feature vectors and labelled from the compiled
//! hierarchy; per-node online classifiers learn from the examples the query
//! strategy asks the (simulated) user about.

mod metrics;
mod model;
mod query;
mod run;
mod scenario;
mod sensor;
mod window;

pub use metrics::{evaluate, Metrics, NodeConfusion};
pub use model::{predict, train_step, Example, HierarchicalModel, LearningRate, LinearNode};
pub use query::{decide_query, QueryStrategy};
pub use run::{block_accuracies, default_window_spec, simulate, RunConfig, RunEvent, RunOutput, RunSummary};
pub use scenario::{generate_stream, ChannelParams, RecordTemplate, ScenarioScript, Segment, WindowBatch};
pub use sensor::{Channel, SensorReading};
pub use window::{aggregate_window, Aggregator, FeatureVector, WindowSpec};

use thiserror::Error;

use crate::hierarchy::HierarchyError;
use crate::labels::LabelError;

#[derive(Debug, Error, PartialEq)]
pub enum HarnessError {
    #[error("scenario: {0}")]
    Scenario(String),
    #[error("scenario references unknown entities: {}", .0.join(", "))]
    UnknownEntities(Vec<String>),
    #[error("feature vector has {got} values, model expects {expected}")]
    FeatureLength { expected: usize, got: usize },
    #[error("label vector is inconsistent with the hierarchy ({0} violated edges)")]
    InconsistentLabels(usize),
    #[error("sequence lengths differ: {0} predictions, {1} ground-truth vectors")]
    LengthMismatch(usize, usize),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Hierarchy(#[from] HierarchyError),
}
