//! LON metrics: subfunction-change statistics over improving edges plus the
//! classic optima, neutrality, funnel and centrality measures.
//!
//! Every metric is named; [`METRIC_NAMES`] fixes the CSV column order.
//! Undefined values (statistics of an empty set, ratios with a zero
//! denominator) are `None` and serialise as empty cells.

mod funnels;
mod pagerank;
mod subfunction;

pub use funnels::{funnel_metrics, improving_topological_order, neutrality_metrics, FunnelMetrics};
pub use pagerank::{pagerank, pagerank_of_global, DEFAULT_DAMPING};
pub use subfunction::{subfunction_change_stats, EdgeWeighting, SubfunctionStats, Summary};

use std::fmt::Write as _;

use crate::error::{parse_err, LonError, Result};
use crate::lon::Lon;
use crate::problems::AdditiveProblem;

pub const METRIC_NAMES: [&str; 23] = [
    "mean_changed",
    "mean_positive",
    "mean_negative",
    "median_changed",
    "median_positive",
    "median_negative",
    "stdev_changed",
    "stdev_positive",
    "stdev_negative",
    "n_local_optima",
    "n_global_optima",
    "neutral_edge_fraction",
    "mean_plateau_size",
    "n_sinks",
    "n_global_sinks",
    "prop_global_sinks",
    "global_funnel_fraction",
    "mean_funnel_size",
    "max_funnel_size",
    "global_sink_incoming_strength",
    "mean_improving_path_length_to_global",
    "n_funnels",
    "pagerank_of_global",
];

#[derive(Debug, Clone, PartialEq)]
pub struct MetricVector {
    pub subfunction: SubfunctionStats,
    pub n_local_optima: usize,
    pub n_global_optima: usize,
    pub neutral_edge_fraction: f64,
    pub mean_plateau_size: f64,
    pub funnels: FunnelMetrics,
    pub pagerank_of_global: Option<f64>,
}

impl MetricVector {
    /// Values in [`METRIC_NAMES`] order.
    pub fn values(&self) -> [Option<f64>; 23] {
        let s = &self.subfunction;
        let f = &self.funnels;
        [
            s.changed.mean,
            s.positive.mean,
            s.negative.mean,
            s.changed.median,
            s.positive.median,
            s.negative.median,
            s.changed.stdev,
            s.positive.stdev,
            s.negative.stdev,
            Some(self.n_local_optima as f64),
            Some(self.n_global_optima as f64),
            Some(self.neutral_edge_fraction),
            Some(self.mean_plateau_size),
            Some(f.n_sinks as f64),
            Some(f.n_global_sinks as f64),
            f.prop_global_sinks,
            f.global_funnel_fraction,
            f.mean_funnel_size,
            Some(f.max_funnel_size as f64),
            f.global_sink_incoming_strength,
            f.mean_improving_path_length_to_global,
            Some(f.n_funnels as f64),
            self.pagerank_of_global,
        ]
    }

    pub fn get(&self, name: &str) -> Option<Option<f64>> {
        METRIC_NAMES
            .iter()
            .position(|&m| m == name)
            .map(|i| self.values()[i])
    }
}

/// Sampled optima counts: `(nodes, nodes flagged global)`.
pub fn optima_counts(lon: &Lon) -> (usize, usize) {
    (
        lon.nodes().len(),
        lon.nodes().iter().filter(|n| n.is_global).count(),
    )
}

/// All metrics for an annotated LON whose global flags are set.
pub fn metric_vector(lon: &Lon, problem: &AdditiveProblem) -> Result<MetricVector> {
    if lon.n() != problem.n() {
        return Err(LonError::Mismatch(format!(
            "LON has n={}, problem has n={}",
            lon.n(),
            problem.n()
        )));
    }
    let (n_local_optima, n_global_optima) = optima_counts(lon);
    let (neutral_edge_fraction, mean_plateau_size) = neutrality_metrics(lon);
    Ok(MetricVector {
        subfunction: subfunction_change_stats(lon, EdgeWeighting::PerEdge),
        n_local_optima,
        n_global_optima,
        neutral_edge_fraction,
        mean_plateau_size,
        funnels: funnel_metrics(lon),
        pagerank_of_global: pagerank_of_global(lon, DEFAULT_DAMPING),
    })
}

/// One metrics CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub instance: String,
    pub algorithm: String,
    pub values: Vec<Option<f64>>,
}

impl MetricRow {
    pub fn new(instance: &str, algorithm: &str, metrics: &MetricVector) -> Self {
        MetricRow {
            instance: instance.to_string(),
            algorithm: algorithm.to_string(),
            values: metrics.values().to_vec(),
        }
    }

    pub fn value(&self, metric: &str) -> Option<f64> {
        METRIC_NAMES
            .iter()
            .position(|&m| m == metric)
            .and_then(|i| self.values[i])
    }
}

pub fn metrics_csv_header() -> String {
    format!("instance,algorithm,{}", METRIC_NAMES.join(","))
}

pub fn write_metrics_csv(rows: &[MetricRow]) -> String {
    let mut out = metrics_csv_header();
    out.push('\n');
    for row in rows {
        write!(out, "{},{}", row.instance, row.algorithm).unwrap();
        for v in &row.values {
            match v {
                Some(x) => write!(out, ",{x}").unwrap(),
                None => out.push(','),
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_metrics_csv(text: &str) -> Result<Vec<MetricRow>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty metrics CSV"))?;
    if header.trim() != metrics_csv_header() {
        return Err(parse_err(1, "metrics CSV header does not match the metric set"));
    }
    lines
        .map(|(i, line)| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 2 + METRIC_NAMES.len() {
                return Err(parse_err(i + 1, format!("expected {} columns", 2 + METRIC_NAMES.len())));
            }
            let values = cols[2..]
                .iter()
                .map(|c| {
                    if c.is_empty() {
                        Ok(None)
                    } else {
                        c.parse::<f64>()
                            .map(Some)
                            .map_err(|_| parse_err(i + 1, format!("bad number {c:?}")))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MetricRow {
                instance: cols[0].to_string(),
                algorithm: cols[1].to_string(),
                values,
            })
        })
        .collect()
}
