use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::{
    aggregate_window, decide_query, evaluate, generate_stream, predict, train_step, Aggregator, Example, HarnessError,
    HierarchicalModel, LearningRate, Metrics, QueryStrategy, ScenarioScript, WindowSpec,
};
use crate::hierarchy::{compile, Hierarchy};
use crate::kg::{snapshot_eg, Eg, Etg};
use crate::labels::{labels_from_eg, LabelSpace, LabelVector};
use crate::time::Timestamp;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub window_s: i64,
    pub strategy: QueryStrategy,
    /// Replaces the script seed when set.
    pub seed: Option<u64>,
    pub learning_rate: LearningRate,
    /// Number of trailing windows for the final per-node accuracy.
    pub accuracy_window: usize,
    /// Replaces the default excluded property set when set.
    pub q: Option<BTreeSet<String>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            window_s: 1800,
            strategy: QueryStrategy::Always,
            seed: None,
            learning_rate: LearningRate::default(),
            accuracy_window: 50,
            q: None,
        }
    }
}

/// One line of the event log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunEvent {
    pub window: usize,
    pub begin: Timestamp,
    pub end: Timestamp,
    pub features: Vec<f64>,
    pub queried: bool,
    pub predicted: Vec<String>,
    pub truth: Vec<String>,
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub unresolved: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub seed: u64,
    pub strategy: QueryStrategy,
    pub windows: usize,
    pub queries: usize,
    pub manifest: Vec<String>,
    pub metrics: Metrics,
    /// Accuracy of each node that is ever true, over the trailing windows.
    pub final_accuracy: BTreeMap<String, f64>,
}

impl RunSummary {
    pub fn min_final_accuracy(&self) -> f64 {
        self.final_accuracy.values().copied().fold(1.0, f64::min)
    }
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub hierarchy: Hierarchy,
    pub space: LabelSpace,
    pub events: Vec<RunEvent>,
    pub predictions: Vec<LabelVector>,
    pub truth: Vec<LabelVector>,
    pub summary: RunSummary,
    pub model: HierarchicalModel,
}

/// Mean and variance of every channel the script uses.
pub fn default_window_spec(script: &ScenarioScript, window_s: i64) -> WindowSpec {
    let features = script
        .channels()
        .into_iter()
        .flat_map(|c| [(c.clone(), Aggregator::Mean), (c.clone(), Aggregator::Variance)])
        .collect();
    WindowSpec {
        length_s: window_s,
        features,
    }
}

/// Test-then-train loop: each window is predicted first, then used for
/// training if the strategy asks for its label.
pub fn simulate(script: &ScenarioScript, etg: &Etg, eg: &Eg, config: &RunConfig) -> Result<RunOutput, HarnessError> {
    config.strategy.check().map_err(HarnessError::Scenario)?;
    let q = config.q.clone().unwrap_or_else(|| etg.default_q());
    let hierarchy = compile(etg, eg, &q)?;
    let space = LabelSpace::new(&hierarchy)?;
    let mut script = script.clone();
    if let Some(seed) = config.seed {
        script.seed = seed;
    }
    let batches = generate_stream(&script, config.window_s, etg, eg)?;
    let spec = default_window_spec(&script, config.window_s);
    let mut model = HierarchicalModel::new(space.clone(), spec.dim(), config.learning_rate);

    let mut events = Vec::with_capacity(batches.len());
    let (mut predictions, mut truth) = (Vec::new(), Vec::new());
    for (i, batch) in batches.iter().enumerate() {
        let x = aggregate_window(&batch.readings, batch.begin, batch.end, &spec);
        let snapshot = snapshot_eg(eg, &batch.truth, etg);
        let (y, _) = labels_from_eg(&space, &hierarchy, etg, &snapshot.eg);
        let y_hat = predict(&model, &x)?;
        let queried = decide_query(config.strategy, &x, &model)?;
        events.push(RunEvent {
            window: i,
            begin: batch.begin,
            end: batch.end,
            features: x.values.clone(),
            queried,
            predicted: y_hat.set_ids(&space).map(String::from).collect(),
            truth: y.set_ids(&space).map(String::from).collect(),
            exact: y_hat == y,
            unresolved: snapshot.unresolved,
        });
        if queried {
            train_step(&mut model, &Example { x, y: y.clone() })?;
        }
        predictions.push(y_hat);
        truth.push(y);
    }

    let metrics = evaluate(&space, &predictions, &truth)?;
    let tail = predictions.len().saturating_sub(config.accuracy_window);
    let mut final_accuracy = BTreeMap::new();
    for (i, id) in space.order().iter().enumerate() {
        if !truth.iter().any(|t| t.get(i)) {
            continue;
        }
        let pairs = predictions[tail..].iter().zip(&truth[tail..]);
        let n = pairs.len().max(1);
        let agree = pairs.filter(|(p, t)| p.get(i) == t.get(i)).count();
        final_accuracy.insert(id.clone(), agree as f64 / n as f64);
    }
    let summary = RunSummary {
        seed: script.seed,
        strategy: config.strategy,
        windows: events.len(),
        queries: events.iter().filter(|e| e.queried).count(),
        manifest: spec.manifest(),
        metrics,
        final_accuracy,
    };
    Ok(RunOutput {
        hierarchy,
        space,
        events,
        predictions,
        truth,
        summary,
        model,
    })
}

/// Hamming accuracy over all nodes for each complete block of `block`
/// consecutive windows.
pub fn block_accuracies(predictions: &[LabelVector], truth: &[LabelVector], block: usize) -> Vec<f64> {
    if block == 0 {
        return Vec::new();
    }
    predictions
        .chunks_exact(block)
        .zip(truth.chunks_exact(block))
        .map(|(ps, ts)| {
            let (mut agree, mut total) = (0usize, 0usize);
            for (p, t) in ps.iter().zip(ts) {
                agree += p.bits().iter().zip(t.bits()).filter(|(a, b)| a == b).count();
                total += p.len();
            }
            if total == 0 {
                1.0
            } else {
                agree as f64 / total as f64
            }
        })
        .collect()
}
