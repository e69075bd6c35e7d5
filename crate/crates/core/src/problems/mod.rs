//! k-bounded pseudo-boolean problems in additive form.
//!
//! A problem is a sum of subfunctions, each a dense lookup table over a
//! small ordered set of variables. Table key bit `j` is the value of the
//! subfunction's `j`-th variable.

mod builders;
mod format;
mod oracle;

pub use builders::{
    bimodal_trap_value, build_concatenated_traps, build_overlapping_traps, deceptive_suite,
    generate_max3sat, generate_nk, trap_value, Clause, DeceptivePreset, OverlapLayout,
    OverlapVariant, TrapShape,
};
pub use format::{from_dimacs, parse_instance, to_dimacs, write_instance};
pub use oracle::{enumerate_optima, global_fitness, OptimaSet, ENUMERATION_LIMIT};

use std::fmt;
use std::str::FromStr;

use crate::bits::Bits;
use crate::error::{invalid, LonError, Result};

/// Subfunction tables wider than this are refused.
pub const MAX_ARITY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    TrapConcat,
    TrapOverlap,
    BimodalConcat,
    BimodalOverlap,
    Nk,
    Max3Sat,
}

impl ProblemKind {
    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::TrapConcat => "trap_concat",
            ProblemKind::TrapOverlap => "trap_overlap",
            ProblemKind::BimodalConcat => "bimodal_concat",
            ProblemKind::BimodalOverlap => "bimodal_overlap",
            ProblemKind::Nk => "nk",
            ProblemKind::Max3Sat => "max3sat",
        }
    }

    /// Integer-valued families are evaluated exactly.
    pub fn is_integer_valued(self) -> bool {
        !matches!(self, ProblemKind::Nk)
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProblemKind {
    type Err = LonError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "trap_concat" => ProblemKind::TrapConcat,
            "trap_overlap" => ProblemKind::TrapOverlap,
            "bimodal_concat" => ProblemKind::BimodalConcat,
            "bimodal_overlap" => ProblemKind::BimodalOverlap,
            "nk" => ProblemKind::Nk,
            "max3sat" => ProblemKind::Max3Sat,
            other => return invalid(format!("unknown problem kind {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subfunction {
    indices: Vec<usize>,
    table: Vec<f64>,
}

impl Subfunction {
    pub fn new(indices: Vec<usize>, table: Vec<f64>) -> Result<Self> {
        if indices.is_empty() {
            return invalid("subfunction has no variables");
        }
        if indices.len() > MAX_ARITY {
            return invalid(format!(
                "subfunction arity {} exceeds {MAX_ARITY}",
                indices.len()
            ));
        }
        if table.len() != 1 << indices.len() {
            return invalid(format!(
                "table length {} does not match arity {}",
                table.len(),
                indices.len()
            ));
        }
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            return invalid(format!("repeated variable in {indices:?}"));
        }
        if table.iter().any(|v| !v.is_finite()) {
            return invalid("non-finite table value");
        }
        Ok(Subfunction { indices, table })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    #[inline]
    pub fn local_key(&self, bits: &Bits) -> usize {
        self.indices
            .iter()
            .enumerate()
            .fold(0, |key, (j, &i)| key | (usize::from(bits.get(i)) << j))
    }

    #[inline]
    pub fn value(&self, bits: &Bits) -> f64 {
        self.table[self.local_key(bits)]
    }
}

/// An objective `f(x) = Σ_s f_s(x_{I_s})`, always maximised.
#[derive(Debug, Clone, PartialEq)]
pub struct AdditiveProblem {
    n: usize,
    kind: ProblemKind,
    subfunctions: Vec<Subfunction>,
    known_global_fitness: Option<f64>,
    // subfunctions touching each variable, ascending
    touching: Vec<Vec<usize>>,
}

impl AdditiveProblem {
    pub fn new(
        n: usize,
        kind: ProblemKind,
        subfunctions: Vec<Subfunction>,
        known_global_fitness: Option<f64>,
    ) -> Result<Self> {
        if subfunctions.is_empty() {
            return invalid("problem has no subfunctions");
        }
        let mut touching = vec![Vec::new(); n];
        for (s, sub) in subfunctions.iter().enumerate() {
            for &i in sub.indices() {
                if i >= n {
                    return invalid(format!("subfunction {s} references variable {i} >= n={n}"));
                }
                touching[i].push(s);
            }
            if kind == ProblemKind::Max3Sat && sub.arity() != 3 {
                return invalid(format!("MAX3SAT clause {s} has arity {}", sub.arity()));
            }
        }
        if let Some(v) = touching.iter().position(Vec::is_empty) {
            return invalid(format!("variable {v} appears in no subfunction"));
        }
        Ok(AdditiveProblem {
            n,
            kind,
            subfunctions,
            known_global_fitness,
            touching,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn subfunctions(&self) -> &[Subfunction] {
        &self.subfunctions
    }

    pub fn num_subfunctions(&self) -> usize {
        self.subfunctions.len()
    }

    pub fn known_global_fitness(&self) -> Option<f64> {
        self.known_global_fitness
    }

    /// Largest subfunction arity (the `k` of k-bounded).
    pub fn k_bound(&self) -> usize {
        self.subfunctions.iter().map(Subfunction::arity).max().unwrap_or(0)
    }

    /// Subfunctions that take variable `g` as an argument.
    pub fn touching(&self, g: usize) -> &[usize] {
        &self.touching[g]
    }

    pub fn evaluate(&self, bits: &Bits) -> Result<EvaluatedSolution> {
        if bits.len() != self.n {
            return Err(LonError::Mismatch(format!(
                "solution has {} bits, problem has n={}",
                bits.len(),
                self.n
            )));
        }
        let sub_values: Vec<f64> = self.subfunctions.iter().map(|s| s.value(bits)).collect();
        let fitness = sub_values.iter().sum();
        Ok(EvaluatedSolution {
            bits: bits.clone(),
            fitness,
            sub_values,
        })
    }

    /// Fitness only; same summation order as [`evaluate`](Self::evaluate).
    pub fn fitness(&self, bits: &Bits) -> f64 {
        self.subfunctions.iter().map(|s| s.value(bits)).sum()
    }

    /// Evaluates `current` with `flipped` genes inverted, recomputing only
    /// the subfunctions that take a flipped gene as an argument.
    ///
    /// Panics if a flipped index is out of range.
    pub fn partial_evaluate(&self, current: &EvaluatedSolution, flipped: &[usize]) -> PartialEval {
        let mut next = current.clone();
        let recomputed = self.apply_flips(&mut next, flipped);
        PartialEval {
            solution: next,
            recomputed,
        }
    }

    /// In-place form of [`partial_evaluate`](Self::partial_evaluate).
    /// Returns the number of recomputed subfunctions.
    pub fn apply_flips(&self, sol: &mut EvaluatedSolution, flipped: &[usize]) -> usize {
        for &g in flipped {
            assert!(g < self.n, "gene {g} out of range for n={}", self.n);
            sol.bits.flip(g);
        }
        let mut affected: Vec<usize> = flipped
            .iter()
            .flat_map(|&g| self.touching[g].iter().copied())
            .collect();
        affected.sort_unstable();
        affected.dedup();
        for &s in &affected {
            sol.sub_values[s] = self.subfunctions[s].value(&sol.bits);
        }
        // full re-summation keeps fitness a pure function of the bits
        sol.fitness = sol.sub_values.iter().sum();
        affected.len()
    }

    /// Fitness of `sol` with `flipped` inverted, without materialising it.
    pub fn fitness_after_flips(&self, sol: &EvaluatedSolution, flipped: &[usize]) -> f64 {
        let mut probe = sol.clone();
        self.apply_flips(&mut probe, flipped);
        probe.fitness
    }
}

/// A solution with cached total and per-subfunction values.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedSolution {
    pub bits: Bits,
    pub fitness: f64,
    pub sub_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartialEval {
    pub solution: EvaluatedSolution,
    pub recomputed: usize,
}
