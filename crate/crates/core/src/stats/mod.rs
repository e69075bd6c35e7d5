//! Nonparametric statistics for comparing and correlating LON metrics.

mod correlation;
mod mann_whitney;
mod report;

pub use correlation::{correlation_matrix, kendall_tau, midranks, spearman, CorrelationMatrix, CorrelationMethod};
pub use mann_whitney::{exact_p_value, mann_whitney, normal_p_value, MannWhitney, PValueMethod, EXACT_BELOW};
pub use report::{compare_metrics, write_comparison_csv, write_correlation_csv, ComparisonRow};

/// A labelled sample. Missing and non-finite inputs are dropped on
/// construction and counted in `dropped`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub label: String,
    pub values: Vec<f64>,
    pub dropped: usize,
}

impl SampleSet {
    pub fn new(label: impl Into<String>, values: impl IntoIterator<Item = Option<f64>>) -> Self {
        let mut kept = Vec::new();
        let mut dropped = 0;
        for v in values {
            match v {
                Some(x) if x.is_finite() => kept.push(x),
                _ => dropped += 1,
            }
        }
        SampleSet {
            label: label.into(),
            values: kept,
            dropped,
        }
    }

    pub fn from_values(label: impl Into<String>, values: &[f64]) -> Self {
        Self::new(label, values.iter().map(|&v| Some(v)))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Significance stars: `***` p<0.001, `**` p<0.01, `*` p<0.05, else `ns`.
pub fn stars(p: f64) -> &'static str {
    if p < 0.001 {
        "***"
    } else if p < 0.01 {
        "**"
    } else if p < 0.05 {
        "*"
    } else {
        "ns"
    }
}
