//! First-improvement hill climbing, with and without linkage learning.

use rand::seq::SliceRandom;
use rand::Rng;

use super::walsh::is_nonlinear;
use super::Vig;
use crate::bits::Bits;
use crate::error::Result;
use crate::problems::{AdditiveProblem, EvaluatedSolution};

/// Passes over all genes in a fresh random order, keeping a flip only when it
/// strictly improves fitness, until a pass changes nothing.
pub fn fihc<R: Rng + ?Sized>(
    problem: &AdditiveProblem,
    start: &Bits,
    rng: &mut R,
) -> Result<EvaluatedSolution> {
    Ok(climb(problem, problem.evaluate(start)?, rng))
}

pub fn climb<R: Rng + ?Sized>(
    problem: &AdditiveProblem,
    mut x: EvaluatedSolution,
    rng: &mut R,
) -> EvaluatedSolution {
    let mut order: Vec<usize> = (0..problem.n()).collect();
    loop {
        order.shuffle(rng);
        let mut changed = false;
        for &g in &order {
            let candidate = problem.partial_evaluate(&x, &[g]).solution;
            if candidate.fitness > x.fitness {
                x = candidate;
                changed = true;
            }
        }
        if !changed {
            return x;
        }
    }
}

/// Evaluation accounting for [`fihc_with_ll`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LinkageStats {
    /// `f(x^g)` evaluations made by the local search itself.
    pub search_evaluations: u64,
    /// Extra evaluations spent on dependency checks.
    pub linkage_evaluations: u64,
    /// `f(x^h)` lookups served from the pass cache.
    pub cache_hits: u64,
    pub checks: u64,
    pub discovered: u64,
}

/// FIHC that runs a non-linearity check alongside every flip evaluation.
///
/// For each tried gene `g` one partner `h` is drawn uniformly from the genes
/// not yet linked to `g` in `learned`. `f(x)` and `f(x^g)` come from the
/// search; `f(x^h)` is reused when `h` was already tried on the same `x`
/// during this pass, otherwise computed; `f(x^{g,h})` is always extra.
pub fn fihc_with_ll<R: Rng + ?Sized>(
    problem: &AdditiveProblem,
    start: &Bits,
    learned: &mut Vig,
    rng: &mut R,
) -> Result<(EvaluatedSolution, LinkageStats)> {
    let x = problem.evaluate(start)?;
    learned.check_size(problem.n())?;
    Ok(climb_with_ll(problem, x, learned, rng))
}

pub fn climb_with_ll<R: Rng + ?Sized>(
    problem: &AdditiveProblem,
    mut x: EvaluatedSolution,
    learned: &mut Vig,
    rng: &mut R,
) -> (EvaluatedSolution, LinkageStats) {
    let n = problem.n();
    let mut stats = LinkageStats::default();
    let mut order: Vec<usize> = (0..n).collect();
    // f(x^h) for the current x; cleared whenever x moves
    let mut single_flip: Vec<Option<f64>> = vec![None; n];
    let mut partners: Vec<usize> = Vec::with_capacity(n);
    loop {
        order.shuffle(rng);
        let mut changed = false;
        for &g in &order {
            let candidate = problem.partial_evaluate(&x, &[g]).solution;
            stats.search_evaluations += 1;
            single_flip[g] = Some(candidate.fitness);

            partners.clear();
            partners.extend((0..n).filter(|&h| h != g && !learned.has_edge(g, h)));
            if let Some(&h) = partners.choose(rng) {
                let fh = match single_flip[h] {
                    Some(v) => {
                        stats.cache_hits += 1;
                        v
                    }
                    None => {
                        stats.linkage_evaluations += 1;
                        let v = problem.fitness_after_flips(&x, &[h]);
                        single_flip[h] = Some(v);
                        v
                    }
                };
                let fgh = problem.fitness_after_flips(&x, &[g, h]);
                stats.linkage_evaluations += 1;
                stats.checks += 1;
                if is_nonlinear(x.fitness, candidate.fitness, fh, fgh) && learned.add_edge(g, h) {
                    stats.discovered += 1;
                }
            }

            if candidate.fitness > x.fitness {
                x = candidate;
                changed = true;
                single_flip.iter_mut().for_each(|c| *c = None);
            }
        }
        if !changed {
            return (x, stats);
        }
    }
}
