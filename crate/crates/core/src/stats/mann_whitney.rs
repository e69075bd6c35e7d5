use statrs::distribution::{ContinuousCDF, Normal};

use super::{correlation::midranks, stars, SampleSet};
use crate::error::{invalid, Result};

/// Exact p-values are used when the smaller sample has fewer than this many
/// values; the normal approximation otherwise.
pub const EXACT_BELOW: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PValueMethod {
    Exact,
    Normal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MannWhitney {
    /// U statistic of the first sample.
    pub u: f64,
    /// Two-sided p-value.
    pub p: f64,
    pub stars: &'static str,
    pub n_a: usize,
    pub n_b: usize,
    pub method: PValueMethod,
}

struct Pooled {
    /// Midranks of the pooled sample, `a` first.
    ranks: Vec<f64>,
    n_a: usize,
    n_b: usize,
}

fn pool(a: &SampleSet, b: &SampleSet) -> Result<Pooled> {
    if a.is_empty() || b.is_empty() {
        return invalid(format!(
            "Mann-Whitney needs non-empty samples ({} has {}, {} has {})",
            a.label,
            a.len(),
            b.label,
            b.len()
        ));
    }
    let pooled: Vec<f64> = a.values.iter().chain(&b.values).copied().collect();
    Ok(Pooled {
        ranks: midranks(&pooled),
        n_a: a.len(),
        n_b: b.len(),
    })
}

fn u_statistic(p: &Pooled) -> f64 {
    let rank_sum: f64 = p.ranks[..p.n_a].iter().sum();
    rank_sum - (p.n_a * (p.n_a + 1)) as f64 / 2.0
}

pub fn mann_whitney(a: &SampleSet, b: &SampleSet) -> Result<MannWhitney> {
    let pooled = pool(a, b)?;
    let u = u_statistic(&pooled);
    let method = if pooled.n_a.min(pooled.n_b) < EXACT_BELOW {
        PValueMethod::Exact
    } else {
        PValueMethod::Normal
    };
    let p = match method {
        PValueMethod::Exact => exact_from_pooled(&pooled, u),
        PValueMethod::Normal => normal_from_pooled(&pooled, u),
    };
    Ok(MannWhitney {
        u,
        p,
        stars: stars(p),
        n_a: pooled.n_a,
        n_b: pooled.n_b,
        method,
    })
}

/// Two-sided p-value from the exact permutation distribution of U given the
/// observed tie structure.
pub fn exact_p_value(a: &SampleSet, b: &SampleSet) -> Result<f64> {
    let pooled = pool(a, b)?;
    let u = u_statistic(&pooled);
    Ok(exact_from_pooled(&pooled, u))
}

/// Two-sided p-value from the normal approximation with tie and continuity
/// correction.
pub fn normal_p_value(a: &SampleSet, b: &SampleSet) -> Result<f64> {
    let pooled = pool(a, b)?;
    let u = u_statistic(&pooled);
    Ok(normal_from_pooled(&pooled, u))
}

fn exact_from_pooled(p: &Pooled, u_obs: f64) -> f64 {
    // Doubled midranks are integers, so the rank-sum distribution of every
    // size-n_a subset is a counting DP over integer sums.
    let doubled: Vec<usize> = p.ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    let k = p.n_a;
    // ways[j][s]: subsets of size j with doubled rank sum s
    let mut ways = vec![vec![0.0f64; max_sum + 1]; k + 1];
    ways[0][0] = 1.0;
    for &r in &doubled {
        for j in (1..=k).rev() {
            let (lower, upper) = ways.split_at_mut(j);
            let prev = &lower[j - 1];
            let cur = &mut upper[0];
            for s in (r..=max_sum).rev() {
                cur[s] += prev[s - r];
            }
        }
    }
    let offset = (k * (k + 1)) as f64 / 2.0;
    let mean = (p.n_a * p.n_b) as f64 / 2.0;
    let observed = (u_obs - mean).abs();
    let total: f64 = ways[k].iter().sum();
    let extreme: f64 = ways[k]
        .iter()
        .enumerate()
        .filter(|(s, _)| ((*s as f64 / 2.0 - offset) - mean).abs() >= observed - 1e-9)
        .map(|(_, w)| w)
        .sum();
    (extreme / total).min(1.0)
}

fn normal_from_pooled(p: &Pooled, u: f64) -> f64 {
    let (na, nb) = (p.n_a as f64, p.n_b as f64);
    let n = na + nb;
    let mut sorted = p.ranks.clone();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|&&r| r == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let z = ((u - na * nb / 2.0).abs() - 0.5).max(0.0) / var.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * normal.sf(z)).min(1.0)
}
