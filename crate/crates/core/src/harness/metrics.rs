use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::labels::{LabelError, LabelSpace, LabelVector};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeConfusion {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl NodeConfusion {
    pub fn accuracy(&self) -> f64 {
        let n = self.tp + self.fp + self.fn_ + self.tn;
        if n == 0 {
            1.0
        } else {
            (self.tp + self.tn) as f64 / n as f64
        }
    }
}

/// Set-based scores over the non-root nodes, micro-averaged across examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub examples: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub exact_match: f64,
    pub hamming_accuracy: f64,
    pub per_node: BTreeMap<String, NodeConfusion>,
}

fn ratio(num: u64, den: u64, both_empty: bool) -> f64 {
    match den {
        0 if both_empty => 1.0,
        0 => 0.0,
        _ => num as f64 / den as f64,
    }
}

/// Scores predictions against ground truth. When neither side sets any
/// non-root node, precision and recall are 1.
pub fn evaluate(
    space: &LabelSpace,
    predictions: &[LabelVector],
    truth: &[LabelVector],
) -> Result<Metrics, HarnessError> {
    if predictions.len() != truth.len() {
        return Err(HarnessError::LengthMismatch(predictions.len(), truth.len()));
    }
    let n = space.len();
    for y in predictions.iter().chain(truth) {
        if y.len() != n {
            return Err(LabelError::LengthMismatch {
                expected: n,
                got: y.len(),
            }
            .into());
        }
    }
    let nodes: Vec<usize> = (0..n).filter(|&i| Some(i) != space.root()).collect();
    let mut confusion = vec![NodeConfusion::default(); n];
    let (mut hit, mut predicted, mut actual, mut exact, mut agree) = (0u64, 0u64, 0u64, 0usize, 0u64);
    for (p, t) in predictions.iter().zip(truth) {
        let mut all = true;
        for (i, c) in confusion.iter_mut().enumerate() {
            match (p.get(i), t.get(i)) {
                (true, true) => c.tp += 1,
                (true, false) => c.fp += 1,
                (false, true) => c.fn_ += 1,
                (false, false) => c.tn += 1,
            }
        }
        for &i in &nodes {
            let (a, b) = (p.get(i), t.get(i));
            hit += u64::from(a && b);
            predicted += u64::from(a);
            actual += u64::from(b);
            agree += u64::from(a == b);
            all &= a == b;
        }
        exact += usize::from(all);
    }
    let both_empty = predicted == 0 && actual == 0;
    let precision = ratio(hit, predicted, both_empty);
    let recall = ratio(hit, actual, both_empty);
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    let m = predictions.len();
    Ok(Metrics {
        examples: m,
        precision,
        recall,
        f1,
        exact_match: if m == 0 { 1.0 } else { exact as f64 / m as f64 },
        hamming_accuracy: ratio(agree, (m * nodes.len()) as u64, true),
        per_node: space.order().iter().cloned().zip(confusion).collect(),
    })
}
