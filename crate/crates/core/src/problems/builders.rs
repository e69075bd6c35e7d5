//! Deceptive trap constructions and random NK / MAX3SAT generators.

use rand::seq::index::sample;
use rand::Rng;

use super::{AdditiveProblem, ProblemKind, Subfunction};
use crate::error::{invalid, Result};
use crate::rng::rng_from_seed;

/// Standard deceptive trap of order `k` at unitation `u`.
pub fn trap_value(u: usize, k: usize) -> Result<i64> {
    if k < 2 {
        return invalid(format!("trap order must be >= 2, got {k}"));
    }
    if u > k {
        return invalid(format!("unitation {u} exceeds order {k}"));
    }
    let (u, k) = (u as i64, k as i64);
    Ok(if u < k { k - u - 1 } else { k })
}

/// Bimodal deceptive trap of order `k` at unitation `u`. Odd orders give
/// half-integer values, which is why this returns `f64`.
pub fn bimodal_trap_value(u: usize, k: usize) -> Result<f64> {
    if k < 2 {
        return invalid(format!("trap order must be >= 2, got {k}"));
    }
    if u > k {
        return invalid(format!("unitation {u} exceeds order {k}"));
    }
    let half = k as f64 / 2.0;
    Ok(if u == 0 || u == k {
        half
    } else {
        half - (u as f64 - half).abs() - 1.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapShape {
    Standard,
    Bimodal,
}

impl TrapShape {
    fn check_order(self, k: usize) -> Result<()> {
        if k < 2 {
            return invalid(format!("trap order must be >= 2, got {k}"));
        }
        if self == TrapShape::Bimodal && k % 2 == 1 {
            return invalid(format!("bimodal traps are generated for even k only, got {k}"));
        }
        Ok(())
    }

    fn value(self, u: usize, k: usize) -> f64 {
        match self {
            TrapShape::Standard => trap_value(u, k).expect("validated order") as f64,
            TrapShape::Bimodal => bimodal_trap_value(u, k).expect("validated order"),
        }
    }

    fn optimum(self, k: usize) -> f64 {
        match self {
            TrapShape::Standard => k as f64,
            TrapShape::Bimodal => k as f64 / 2.0,
        }
    }

    /// Table over `k` local bits; bits set in `complement` are inverted
    /// before counting unitation.
    fn table(self, k: usize, complement: usize) -> Vec<f64> {
        (0..1usize << k)
            .map(|key| self.value((key ^ complement).count_ones() as usize, k))
            .collect()
    }
}

/// `m` disjoint traps of order `k`; block `s` covers `[s·k, (s+1)·k)`.
pub fn build_concatenated_traps(m: usize, k: usize, shape: TrapShape) -> Result<AdditiveProblem> {
    if m == 0 {
        return invalid("need at least one subfunction");
    }
    shape.check_order(k)?;
    let table = shape.table(k, 0);
    let subs = (0..m)
        .map(|s| Subfunction::new((s * k..(s + 1) * k).collect(), table.clone()))
        .collect::<Result<Vec<_>>>()?;
    let kind = match shape {
        TrapShape::Standard => ProblemKind::TrapConcat,
        TrapShape::Bimodal => ProblemKind::BimodalConcat,
    };
    AdditiveProblem::new(m * k, kind, subs, Some(m as f64 * shape.optimum(k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapVariant {
    /// Every subfunction's optimum agrees with the global optimum.
    Conforming,
    /// Odd-numbered subfunctions read their shared variables complemented,
    /// so neighbouring subfunction optima disagree on the overlap.
    Conflicting,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OverlapLayout {
    pub m: usize,
    pub k: usize,
    pub overlap: usize,
    pub shape: TrapShape,
    pub cyclic: bool,
    pub variant: OverlapVariant,
}

impl OverlapLayout {
    pub fn n(&self) -> usize {
        let step = self.k - self.overlap;
        if self.cyclic {
            self.m * step
        } else {
            self.k + (self.m - 1) * step
        }
    }
}

/// Traps where neighbouring subfunctions share `overlap` variables.
/// Subfunction `s` starts at `s·(k−o)`; cyclic layouts wrap modulo `n`.
pub fn build_overlapping_traps(layout: &OverlapLayout) -> Result<AdditiveProblem> {
    let &OverlapLayout {
        m,
        k,
        overlap,
        shape,
        cyclic,
        variant,
    } = layout;
    shape.check_order(k)?;
    if m == 0 {
        return invalid("need at least one subfunction");
    }
    if overlap == 0 || overlap >= k {
        return invalid(format!("overlap must satisfy 1 <= o < k, got o={overlap}, k={k}"));
    }
    let step = k - overlap;
    if cyclic && m * step < k {
        return invalid(format!(
            "cyclic layout needs m·(k−o) >= k, got m={m}, k={k}, o={overlap}"
        ));
    }
    let n = layout.n();
    let index_sets: Vec<Vec<usize>> = (0..m)
        .map(|s| (0..k).map(|j| (s * step + j) % n).collect())
        .collect();
    let mut occurrences = vec![0usize; n];
    for set in &index_sets {
        for &i in set {
            occurrences[i] += 1;
        }
    }
    let subs = index_sets
        .into_iter()
        .enumerate()
        .map(|(s, indices)| {
            let complement = match variant {
                OverlapVariant::Conflicting if s % 2 == 1 => indices
                    .iter()
                    .enumerate()
                    .filter(|(_, &i)| occurrences[i] > 1)
                    .fold(0usize, |acc, (j, _)| acc | 1 << j),
                _ => 0,
            };
            Subfunction::new(indices, shape.table(k, complement))
        })
        .collect::<Result<Vec<_>>>()?;
    let kind = match shape {
        TrapShape::Standard => ProblemKind::TrapOverlap,
        TrapShape::Bimodal => ProblemKind::BimodalOverlap,
    };
    let known = match variant {
        OverlapVariant::Conforming => Some(m as f64 * shape.optimum(k)),
        OverlapVariant::Conflicting => None,
    };
    AdditiveProblem::new(n, kind, subs, known)
}

/// NK landscape with the adjacent circular neighbourhood: subfunction `i`
/// reads variables `i, i+1, …, i+k (mod n)`, table entries uniform in [0,1).
pub fn generate_nk(n: usize, k: usize, seed: u64) -> Result<AdditiveProblem> {
    if n <= k + 1 {
        return invalid(format!("NK needs n > k+1, got n={n}, k={k}"));
    }
    if k + 1 > super::MAX_ARITY {
        return invalid(format!("NK arity {} exceeds {}", k + 1, super::MAX_ARITY));
    }
    let mut rng = rng_from_seed(seed);
    let subs = (0..n)
        .map(|i| {
            let indices = (0..=k).map(|j| (i + j) % n).collect();
            let table = (0..1usize << (k + 1)).map(|_| rng.gen::<f64>()).collect();
            Subfunction::new(indices, table)
        })
        .collect::<Result<Vec<_>>>()?;
    AdditiveProblem::new(n, ProblemKind::Nk, subs, None)
}

/// A 3-literal disjunction. `negated[j]` marks `¬x_{vars[j]}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Clause {
    pub vars: [usize; 3],
    pub negated: [bool; 3],
}

impl Clause {
    /// Literals sorted by variable.
    pub fn canonical(mut self) -> Clause {
        let mut lits: Vec<(usize, bool)> = self.vars.into_iter().zip(self.negated).collect();
        lits.sort_unstable();
        for (j, (v, neg)) in lits.into_iter().enumerate() {
            self.vars[j] = v;
            self.negated[j] = neg;
        }
        self
    }

    /// Subfunction that is 1 when the clause is satisfied.
    pub fn to_subfunction(self) -> Result<Subfunction> {
        let table = (0..8usize)
            .map(|key| {
                let sat = (0..3).any(|j| ((key >> j) & 1 == 1) != self.negated[j]);
                if sat {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        Subfunction::new(self.vars.to_vec(), table)
    }

    /// Recovers the clause from a 0/1 table with exactly one falsifying key.
    pub fn from_subfunction(sub: &Subfunction) -> Option<Clause> {
        if sub.arity() != 3 {
            return None;
        }
        let zeros: Vec<usize> = (0..8).filter(|&key| sub.table()[key] == 0.0).collect();
        let ones = sub.table().iter().filter(|&&v| v == 1.0).count();
        if zeros.len() != 1 || ones != 7 {
            return None;
        }
        // the falsifying assignment sets every literal false
        let z = zeros[0];
        let idx = sub.indices();
        Some(Clause {
            vars: [idx[0], idx[1], idx[2]],
            negated: [z & 1 == 1, z >> 1 & 1 == 1, z >> 2 & 1 == 1],
        })
    }
}

/// Uniform random MAX3SAT: `round(cr·n)` clauses (half-up), three distinct
/// variables per clause, each negated with probability 1/2. Duplicate
/// clauses are allowed.
pub fn generate_max3sat(n: usize, cr: f64, seed: u64) -> Result<AdditiveProblem> {
    if n < 3 {
        return invalid(format!("MAX3SAT needs n >= 3, got {n}"));
    }
    if !(cr.is_finite() && cr > 0.0) {
        return invalid(format!("clause ratio must be positive, got {cr}"));
    }
    let m = (cr * n as f64 + 0.5).floor() as usize;
    let mut rng = rng_from_seed(seed);
    let mut clauses = Vec::with_capacity(m);
    for _ in 0..m {
        let picked = sample(&mut rng, n, 3);
        let clause = Clause {
            vars: [picked.index(0), picked.index(1), picked.index(2)],
            negated: [rng.gen_bool(0.5), rng.gen_bool(0.5), rng.gen_bool(0.5)],
        };
        clauses.push(clause.canonical());
    }
    max3sat_from_clauses(n, &clauses)
}

pub(crate) fn max3sat_from_clauses(n: usize, clauses: &[Clause]) -> Result<AdditiveProblem> {
    let subs = clauses
        .iter()
        .map(|c| c.to_subfunction())
        .collect::<Result<Vec<_>>>()?;
    AdditiveProblem::new(n, ProblemKind::Max3Sat, subs, None)
}

/// One named member of the deceptive benchmark suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeceptivePreset {
    pub name: &'static str,
    pub m: usize,
    pub k: usize,
    pub overlap: usize,
    pub shape: TrapShape,
    pub cyclic: bool,
    pub variant: OverlapVariant,
}

impl DeceptivePreset {
    pub fn build(&self) -> Result<AdditiveProblem> {
        if self.overlap == 0 {
            build_concatenated_traps(self.m, self.k, self.shape)
        } else {
            build_overlapping_traps(&OverlapLayout {
                m: self.m,
                k: self.k,
                overlap: self.overlap,
                shape: self.shape,
                cyclic: self.cyclic,
                variant: self.variant,
            })
        }
    }
}

const fn preset(
    name: &'static str,
    m: usize,
    k: usize,
    overlap: usize,
    shape: TrapShape,
    cyclic: bool,
    variant: OverlapVariant,
) -> DeceptivePreset {
    DeceptivePreset {
        name,
        m,
        k,
        overlap,
        shape,
        cyclic,
        variant,
    }
}

use OverlapVariant::{Conflicting, Conforming};
use TrapShape::{Bimodal, Standard};

/// The eleven deterministic deceptive instances, 15 to 18 bits each.
pub const DECEPTIVE_SUITE: [DeceptivePreset; 11] = [
    preset("trap_m5_k3", 5, 3, 0, Standard, false, Conforming),
    preset("trap_m6_k3", 6, 3, 0, Standard, false, Conforming),
    preset("trap_m4_k4", 4, 4, 0, Standard, false, Conforming),
    preset("trap_m3_k5", 3, 5, 0, Standard, false, Conforming),
    preset("bimodal_m4_k4", 4, 4, 0, Bimodal, false, Conforming),
    preset("trap_cyc_m5_k5_o2", 5, 5, 2, Standard, true, Conforming),
    preset("trap_chain_m4_k5_o1", 4, 5, 1, Standard, false, Conforming),
    preset("trap_cyc_m5_k5_o2_conflict", 5, 5, 2, Standard, true, Conflicting),
    preset("bimodal_chain_m5_k4_o1", 5, 4, 1, Bimodal, false, Conforming),
    preset("bimodal_chain_m4_k6_o2", 4, 6, 2, Bimodal, false, Conforming),
    preset("bimodal_cyc_m8_k6_o4", 8, 6, 4, Bimodal, true, Conforming),
];

pub fn deceptive_suite() -> &'static [DeceptivePreset] {
    &DECEPTIVE_SUITE
}
