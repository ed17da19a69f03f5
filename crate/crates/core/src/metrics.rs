//! Confusion-matrix construction and the three accuracy measures used to
//! score classifiers: test accuracy, balanced accuracy, and the average
//! table-of-confusion accuracy.
//!
//! All functions here are pure; rows index the real class and columns the
//! predicted class.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::NUM_CLASSES;

#[derive(Debug, Error, PartialEq)]
pub enum MetricsError {
    #[error("confusion matrix is empty (no evaluated samples)")]
    EmptyMatrix,
    #[error("class {0} has no samples in the evaluation set (zero row sum)")]
    MissingClass(usize),
}

/// Count matrix over the nine classes: `counts[real][predicted]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; NUM_CLASSES]; NUM_CLASSES],
}

impl Default for ConfusionMatrix {
    fn default() -> Self {
        Self::new()
    }
}

impl ConfusionMatrix {
    pub fn new() -> Self {
        Self {
            counts: [[0; NUM_CLASSES]; NUM_CLASSES],
        }
    }

    pub fn from_counts(counts: [[u64; NUM_CLASSES]; NUM_CLASSES]) -> Self {
        Self { counts }
    }

    /// Record one evaluated sample.
    pub fn record(&mut self, real: usize, predicted: usize) {
        self.counts[real][predicted] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn row_sum(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn col_sum(&self, class: usize) -> u64 {
        self.counts.iter().map(|row| row[class]).sum()
    }

    pub fn trace(&self) -> u64 {
        (0..NUM_CLASSES).map(|c| self.counts[c][c]).sum()
    }

    /// One CSV row per real class, plain integer counts.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.counts {
            let line: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Row-normalized proportions; rows with no samples stay all-zero and are
/// listed in `zero_rows`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedConfusionMatrix {
    pub proportions: [[f64; NUM_CLASSES]; NUM_CLASSES],
    pub zero_rows: Vec<usize>,
}

impl NormalizedConfusionMatrix {
    pub fn from_proportions(proportions: [[f64; NUM_CLASSES]; NUM_CLASSES]) -> Self {
        let zero_rows = proportions
            .iter()
            .enumerate()
            .filter(|(_, row)| row.iter().all(|&p| p == 0.0))
            .map(|(i, _)| i)
            .collect();
        Self {
            proportions,
            zero_rows,
        }
    }

    /// Mean of the diagonal, i.e. the balanced accuracy the proportions imply.
    pub fn balanced_accuracy(&self) -> f64 {
        (0..NUM_CLASSES)
            .map(|c| self.proportions[c][c])
            .sum::<f64>()
            / NUM_CLASSES as f64
    }

    /// One CSV row per real class, proportions rounded to 4 decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.proportions {
            let line: Vec<String> = row.iter().map(|p| format!("{:.4}", p)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// One-vs-rest collapse of a confusion matrix for a single class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOfConfusion {
    pub true_positive: u64,
    pub false_negative: u64,
    pub false_positive: u64,
    pub true_negative: u64,
}

impl TableOfConfusion {
    pub fn total(&self) -> u64 {
        self.true_positive + self.false_negative + self.false_positive + self.true_negative
    }

    pub fn accuracy(&self) -> f64 {
        (self.true_positive + self.true_negative) as f64 / self.total() as f64
    }
}

/// Fraction of samples predicted correctly: trace / total.
pub fn test_accuracy(cm: &ConfusionMatrix) -> Result<f64, MetricsError> {
    let total = cm.total();
    if total == 0 {
        return Err(MetricsError::EmptyMatrix);
    }
    Ok(cm.trace() as f64 / total as f64)
}

/// Mean over classes of the per-class recall `counts[c][c] / rowsum(c)`.
///
/// Errors if any class is absent from the evaluation set; rare classes are
/// the reason this measure exists, so they are never silently skipped.
pub fn balanced_accuracy(cm: &ConfusionMatrix) -> Result<f64, MetricsError> {
    if cm.total() == 0 {
        return Err(MetricsError::EmptyMatrix);
    }
    let mut sum = 0.0;
    for c in 0..NUM_CLASSES {
        let row = cm.row_sum(c);
        if row == 0 {
            return Err(MetricsError::MissingClass(c));
        }
        sum += cm.counts[c][c] as f64 / row as f64;
    }
    Ok(sum / NUM_CLASSES as f64)
}

pub fn table_of_confusion(cm: &ConfusionMatrix, class: usize) -> TableOfConfusion {
    let tp = cm.counts[class][class];
    let fn_ = cm.row_sum(class) - tp;
    let fp = cm.col_sum(class) - tp;
    let tn = cm.total() - tp - fn_ - fp;
    TableOfConfusion {
        true_positive: tp,
        false_negative: fn_,
        false_positive: fp,
        true_negative: tn,
    }
}

/// Mean over the nine classes of the one-vs-rest accuracy `(tp+tn)/total`.
pub fn avg_table_of_confusion_accuracy(cm: &ConfusionMatrix) -> Result<f64, MetricsError> {
    if cm.total() == 0 {
        return Err(MetricsError::EmptyMatrix);
    }
    let sum: f64 = (0..NUM_CLASSES)
        .map(|c| table_of_confusion(cm, c).accuracy())
        .sum();
    Ok(sum / NUM_CLASSES as f64)
}

/// Divide each nonzero row by its sum; zero rows stay zero and are flagged.
pub fn row_normalize(cm: &ConfusionMatrix) -> NormalizedConfusionMatrix {
    let mut proportions = [[0.0; NUM_CLASSES]; NUM_CLASSES];
    let mut zero_rows = Vec::new();
    for (c, row) in cm.counts.iter().enumerate() {
        let sum = cm.row_sum(c);
        if sum == 0 {
            zero_rows.push(c);
            continue;
        }
        for (k, &count) in row.iter().enumerate() {
            proportions[c][k] = count as f64 / sum as f64;
        }
    }
    NormalizedConfusionMatrix {
        proportions,
        zero_rows,
    }
}

/// Round to 4 decimals, the precision used in emitted reports.
pub fn round4(x: f64) -> f64 {
    (x * 10_000.0).round() / 10_000.0
}
