//! Exhaustive enumeration for desk-scale verification.

use super::AdditiveProblem;
use crate::bits::Bits;
use crate::error::{LonError, Result};

pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimaSet {
    pub global_fitness: f64,
    pub global: Vec<Bits>,
    /// Vectors with no strictly improving single-bit flip (includes the
    /// global optima), in ascending integer order.
    pub local: Vec<Bits>,
}

/// Scans all `2^n` vectors. Refuses `n > 20`.
pub fn enumerate_optima(problem: &AdditiveProblem) -> Result<OptimaSet> {
    let n = problem.n();
    if n > ENUMERATION_LIMIT {
        return Err(LonError::TooLarge {
            n,
            limit: ENUMERATION_LIMIT,
        });
    }
    let fitness = all_fitness(problem);
    let best = fitness.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut global = Vec::new();
    let mut local = Vec::new();
    for (x, &fx) in fitness.iter().enumerate() {
        if fx == best {
            global.push(Bits::from_u64(x as u64, n));
        }
        if (0..n).all(|g| fitness[x ^ (1 << g)] <= fx) {
            local.push(Bits::from_u64(x as u64, n));
        }
    }
    Ok(OptimaSet {
        global_fitness: best,
        global,
        local,
    })
}

/// Fitness of every vector, indexed by the integer whose bit `g` is gene `g`.
/// Walks a Gray code so each step re-reads only the subfunctions of one gene.
fn all_fitness(problem: &AdditiveProblem) -> Vec<f64> {
    let n = problem.n();
    let mut current = problem
        .evaluate(&Bits::zeros(n))
        .expect("length matches by construction");
    let mut out = vec![0.0; 1 << n];
    out[0] = current.fitness;
    let mut code = 0usize;
    for step in 1usize..1 << n {
        let g = step.trailing_zeros() as usize;
        problem.apply_flips(&mut current, &[g]);
        code ^= 1 << g;
        out[code] = current.fitness;
    }
    out
}

/// Known global fitness if the constructor supplied one, otherwise the
/// exhaustive maximum when `n` is small enough.
pub fn global_fitness(problem: &AdditiveProblem) -> Option<f64> {
    problem
        .known_global_fitness()
        .or_else(|| enumerate_optima(problem).ok().map(|o| o.global_fitness))
}
