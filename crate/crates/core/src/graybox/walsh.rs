use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{Vig, INTERACTION_TOL};
use crate::bits::Bits;
use crate::error::{invalid, Result};
use crate::problems::{AdditiveProblem, MAX_ARITY};

/// In-place unnormalised fast Walsh–Hadamard transform.
pub fn fwht(values: &mut [f64]) {
    let len = values.len();
    assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for block in (0..len).step_by(2 * h) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Coefficients `w` with `t(x) = Σ_i w_i (-1)^{popcount(i & x)}`.
pub fn walsh_transform(table: &[f64]) -> Vec<f64> {
    let mut w = table.to_vec();
    fwht(&mut w);
    let scale = 1.0 / table.len() as f64;
    w.iter_mut().for_each(|c| *c *= scale);
    w
}

pub fn inverse_walsh(coefficients: &[f64]) -> Vec<f64> {
    let mut t = coefficients.to_vec();
    fwht(&mut t);
    t
}

/// Per-subfunction Walsh coefficients over each subfunction's local variables.
#[derive(Debug, Clone, PartialEq)]
pub struct WalshCoefficients {
    pub per_subfunction: Vec<Vec<f64>>,
}

impl WalshCoefficients {
    pub fn of(problem: &AdditiveProblem) -> Result<Self> {
        if problem.k_bound() > MAX_ARITY {
            return invalid(format!(
                "Walsh analysis limited to arity {MAX_ARITY}, problem has {}",
                problem.k_bound()
            ));
        }
        Ok(WalshCoefficients {
            per_subfunction: problem
                .subfunctions()
                .iter()
                .map(|s| walsh_transform(s.table()))
                .collect(),
        })
    }

    /// Coefficients summed over subfunctions, keyed by the global variable
    /// set of each basis function. Terms from different subfunctions on the
    /// same variable set can cancel, so only the aggregate decides linkage.
    pub fn aggregated(&self, problem: &AdditiveProblem) -> BTreeMap<Vec<usize>, f64> {
        let mut agg: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (sub, coeffs) in problem.subfunctions().iter().zip(&self.per_subfunction) {
            for (mask, &w) in coeffs.iter().enumerate() {
                let mut vars: Vec<usize> = sub
                    .indices()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect();
                vars.sort_unstable();
                *agg.entry(vars).or_insert(0.0) += w;
            }
        }
        agg
    }
}

/// Exact non-linear VIG: `g ~ h` iff some nonzero aggregate Walsh
/// coefficient covers both.
pub fn vig_from_walsh(problem: &AdditiveProblem) -> Result<Vig> {
    let coeffs = WalshCoefficients::of(problem)?;
    let mut vig = Vig::empty(problem.n());
    for (vars, w) in coeffs.aggregated(problem) {
        if vars.len() < 2 || w.abs() <= INTERACTION_TOL {
            continue;
        }
        for (a, &g) in vars.iter().enumerate() {
            for &h in &vars[a + 1..] {
                vig.add_edge(g, h);
            }
        }
    }
    Ok(vig)
}

/// Debug listing: a `# subfunction s` line followed by `mask coefficient`
/// lines, mask as a local bit string (variable 0 first).
pub fn walsh_dump(problem: &AdditiveProblem) -> Result<String> {
    let coeffs = WalshCoefficients::of(problem)?;
    let mut out = String::new();
    for (s, (sub, ws)) in problem
        .subfunctions()
        .iter()
        .zip(&coeffs.per_subfunction)
        .enumerate()
    {
        writeln!(out, "# subfunction {s} vars {:?}", sub.indices()).unwrap();
        for (mask, w) in ws.iter().enumerate() {
            let m: String = (0..sub.arity())
                .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
                .collect();
            writeln!(out, "{m} {w}").unwrap();
        }
    }
    Ok(out)
}

/// Whether `f(x) + f(x^{g,h}) ≠ f(x^g) + f(x^h)` beyond tolerance.
pub fn nonlinearity_check(problem: &AdditiveProblem, x: &Bits, g: usize, h: usize) -> bool {
    assert_ne!(g, h, "non-linearity check needs two distinct genes");
    let f = problem.fitness(x);
    let fg = problem.fitness(&x.flipped(&[g]));
    let fh = problem.fitness(&x.flipped(&[h]));
    let fgh = problem.fitness(&x.flipped(&[g, h]));
    is_nonlinear(f, fg, fh, fgh)
}

#[inline]
pub(crate) fn is_nonlinear(f: f64, fg: f64, fh: f64, fgh: f64) -> bool {
    ((f + fgh) - (fg + fh)).abs() > INTERACTION_TOL
}
