use std::fmt::Write as _;

use super::{mann_whitney, CorrelationMatrix, SampleSet};
use crate::metrics::MetricRow;

/// One pairwise algorithm comparison on one metric. Statistic fields are
/// `None` when either side has no usable values.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub metric: String,
    pub alg_a: String,
    pub alg_b: String,
    pub u: Option<f64>,
    pub p: Option<f64>,
    pub stars: Option<&'static str>,
    pub n_a: usize,
    pub n_b: usize,
}

/// Mann-Whitney comparisons for every metric and every pair of algorithms,
/// algorithms taken in order of first appearance.
pub fn compare_metrics(rows: &[MetricRow], metrics: &[&str]) -> Vec<ComparisonRow> {
    let mut algorithms: Vec<&str> = Vec::new();
    for r in rows {
        if !algorithms.contains(&r.algorithm.as_str()) {
            algorithms.push(&r.algorithm);
        }
    }
    let sample = |metric: &str, alg: &str| {
        SampleSet::new(
            alg,
            rows.iter().filter(|r| r.algorithm == alg).map(|r| r.value(metric)),
        )
    };
    let mut out = Vec::new();
    for &metric in metrics {
        for (i, &alg_a) in algorithms.iter().enumerate() {
            for &alg_b in &algorithms[i + 1..] {
                let (a, b) = (sample(metric, alg_a), sample(metric, alg_b));
                let test = mann_whitney(&a, &b).ok();
                out.push(ComparisonRow {
                    metric: metric.to_string(),
                    alg_a: alg_a.to_string(),
                    alg_b: alg_b.to_string(),
                    u: test.as_ref().map(|t| t.u),
                    p: test.as_ref().map(|t| t.p),
                    stars: test.as_ref().map(|t| t.stars),
                    n_a: a.len(),
                    n_b: b.len(),
                });
            }
        }
    }
    out
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("metric,alg_a,alg_b,U,p,stars,n_a,n_b\n");
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.metric,
            r.alg_a,
            r.alg_b,
            opt(r.u),
            opt(r.p),
            opt(r.stars),
            r.n_a,
            r.n_b
        )
        .unwrap();
    }
    out
}

pub fn write_correlation_csv(m: &CorrelationMatrix) -> String {
    let mut out = String::from("metric");
    for name in &m.names {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    for (name, row) in m.names.iter().zip(&m.cells) {
        out.push_str(name);
        for cell in row {
            match cell {
                Some(v) => write!(out, ",{v:.6}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}
