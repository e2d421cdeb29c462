use serde::{Deserialize, Serialize};

use super::{FeatureVector, HarnessError};
use crate::labels::{check_consistency, repair_downward, LabelSpace, LabelVector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LearningRate {
    Constant(f64),
    /// `eta / sqrt(1 + updates)`, counted per node.
    InverseSqrt(f64),
}

impl LearningRate {
    fn at(&self, updates: u64) -> f64 {
        match *self {
            LearningRate::Constant(eta) => eta,
            LearningRate::InverseSqrt(eta) => eta / ((1 + updates) as f64).sqrt(),
        }
    }
}

impl Default for LearningRate {
    fn default() -> Self {
        LearningRate::Constant(1.0)
    }
}

/// A perceptron. A score of exactly 0 counts as negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearNode {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub updates: u64,
}

impl LinearNode {
    pub fn new(dim: usize) -> Self {
        LinearNode {
            weights: vec![0.0; dim],
            bias: 0.0,
            updates: 0,
        }
    }

    pub fn score(&self, x: &[f64]) -> f64 {
        self.weights.iter().zip(x).map(|(w, v)| w * v).sum::<f64>() + self.bias
    }

    /// Hinge-at-zero loss of the perceptron on one example.
    pub fn loss(&self, x: &[f64], positive: bool) -> f64 {
        let t = if positive { 1.0 } else { -1.0 };
        (-t * self.score(x)).max(0.0)
    }

    fn update(&mut self, x: &[f64], positive: bool, rate: LearningRate) {
        let t = if positive { 1.0 } else { -1.0 };
        if t * self.score(x) > 0.0 {
            return;
        }
        let eta = rate.at(self.updates) * t;
        for (w, v) in self.weights.iter_mut().zip(x) {
            *w += eta * v;
        }
        self.bias += eta;
        self.updates += 1;
    }
}

/// A labelled window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Example {
    pub x: FeatureVector,
    pub y: LabelVector,
}

/// One binary classifier per hierarchy node, in label-space order.
#[derive(Debug, Clone, PartialEq)]
pub struct HierarchicalModel {
    space: LabelSpace,
    nodes: Vec<LinearNode>,
    dim: usize,
    rate: LearningRate,
}

impl HierarchicalModel {
    pub fn new(space: LabelSpace, dim: usize, rate: LearningRate) -> Self {
        let nodes = vec![LinearNode::new(dim); space.len()];
        HierarchicalModel {
            space,
            nodes,
            dim,
            rate,
        }
    }

    pub fn space(&self) -> &LabelSpace {
        &self.space
    }

    pub fn nodes(&self) -> &[LinearNode] {
        &self.nodes
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_dim(&self, x: &FeatureVector) -> Result<(), HarnessError> {
        if x.values.len() != self.dim {
            return Err(HarnessError::FeatureLength {
                expected: self.dim,
                got: x.values.len(),
            });
        }
        Ok(())
    }

    pub fn scores(&self, x: &FeatureVector) -> Result<Vec<f64>, HarnessError> {
        self.check_dim(x)?;
        Ok(self.nodes.iter().map(|n| n.score(&x.values)).collect())
    }

    /// Summed per-node loss on one example.
    pub fn loss(&self, z: &Example) -> Result<f64, HarnessError> {
        self.check_dim(&z.x)?;
        Ok(self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| n.loss(&z.x.values, z.y.get(i)))
            .sum())
    }
}

/// One online step on every node. Rejects label vectors that are not
/// upward closed.
pub fn train_step(model: &mut HierarchicalModel, z: &Example) -> Result<(), HarnessError> {
    model.check_dim(&z.x)?;
    let violations = check_consistency(&model.space, &z.y)?;
    if !violations.is_empty() {
        return Err(HarnessError::InconsistentLabels(violations.len()));
    }
    let rate = model.rate;
    for (i, node) in model.nodes.iter_mut().enumerate() {
        node.update(&z.x.values, z.y.get(i), rate);
    }
    Ok(())
}

/// Thresholds every node at zero, then clears any bit whose parents are not
/// all set so the result is consistent.
pub fn predict(model: &HierarchicalModel, x: &FeatureVector) -> Result<LabelVector, HarnessError> {
    let raw = LabelVector::from_bits(model.scores(x)?.into_iter().map(|s| s > 0.0).collect());
    Ok(repair_downward(&model.space, &raw)?)
}
