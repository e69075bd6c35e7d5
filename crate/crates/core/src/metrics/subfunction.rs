use crate::lon::Lon;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeWeighting {
    /// Each improving edge counted once.
    PerEdge,
    /// Each improving edge counted `weight` times.
    ByWeight,
}

/// Mean, median (midpoint for even counts) and population standard deviation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Summary {
    pub mean: Option<f64>,
    pub median: Option<f64>,
    pub stdev: Option<f64>,
}

impl Summary {
    pub fn of(values: &[f64]) -> Summary {
        if values.is_empty() {
            return Summary::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len().is_multiple_of(2) {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        } else {
            sorted[mid]
        };
        Summary {
            mean: Some(mean),
            median: Some(median),
            stdev: Some(var.sqrt()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SubfunctionStats {
    pub changed: Summary,
    pub positive: Summary,
    pub negative: Summary,
}

/// Statistics of the changed / positive / negative subfunction counts over
/// the LON's improving edges.
pub fn subfunction_change_stats(lon: &Lon, weighting: EdgeWeighting) -> SubfunctionStats {
    let mut changed = Vec::new();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for e in lon.improving_edges() {
        let reps = match weighting {
            EdgeWeighting::PerEdge => 1,
            EdgeWeighting::ByWeight => e.weight,
        };
        for _ in 0..reps {
            changed.push(e.annotation.changed as f64);
            positive.push(e.annotation.positive as f64);
            negative.push(e.annotation.negative as f64);
        }
    }
    SubfunctionStats {
        changed: Summary::of(&changed),
        positive: Summary::of(&positive),
        negative: Summary::of(&negative),
    }
}
