//! LON sampling by iterated local search.
//!
//! All three samplers share one skeleton: climb from a uniform random vector,
//! then repeatedly derive a candidate local optimum from the current one and
//! accept it when it is at least as fit. Each accepted candidate (including a
//! return to the same optimum) is one recorded transition. A run stops after
//! `stagnation_cycles` consecutive cycles without a strict fitness gain.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{invalid, LonError, Result};
use crate::graybox::{
    climb, climb_with_ll, partition_crossover, random_flip_mask, vig_perturbation_mask,
    ComponentChoice, Vig,
};
use crate::lon::Lon;
use crate::problems::{AdditiveProblem, EvaluatedSolution};
use crate::rng::{derive_seed, rng_from_seed, LabRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// Black-box ILS: random bit-flip perturbation, FIHC.
    Trad,
    /// Deterministic recombination ILS: perturbation, FIHC, PX with the
    /// current optimum, FIHC.
    Px,
    /// VIG-based perturbation with linkage-learning FIHC.
    Vigp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Trad, Algorithm::Px, Algorithm::Vigp];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Trad => "trad",
            Algorithm::Px => "px",
            Algorithm::Vigp => "vigp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Algorithm {
    type Err = LonError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trad" => Ok(Algorithm::Trad),
            "px" | "drils" => Ok(Algorithm::Px),
            "vigp" => Ok(Algorithm::Vigp),
            other => invalid(format!("unknown algorithm {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub stagnation_cycles: usize,
    /// Bit flips per TRAD / DRILS perturbation.
    pub perturbation_strength: usize,
    /// VIG-perturbation cap; `None` means the problem's largest arity.
    pub alpha: Option<usize>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(algorithm: Algorithm, seed: u64) -> Self {
        RunConfig {
            algorithm,
            runs: 30,
            stagnation_cycles: 30,
            perturbation_strength: 3,
            alpha: None,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return invalid("runs must be >= 1");
        }
        if self.stagnation_cycles == 0 {
            return invalid("stagnation cycles must be >= 1");
        }
        if self.perturbation_strength == 0 {
            return invalid("perturbation strength must be >= 1");
        }
        if self.alpha == Some(0) {
            return invalid("alpha must be >= 1");
        }
        Ok(())
    }

    pub fn alpha_for(&self, problem: &AdditiveProblem) -> usize {
        self.alpha.unwrap_or_else(|| problem.k_bound()).max(1)
    }

    /// Seed of run `run` under this configuration's base seed.
    pub fn run_seed(&self, run: usize) -> u64 {
        derive_seed(self.seed, run as u64)
    }
}

/// The accepted local optima of one run, in order. Consecutive entries are
/// the run's transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct RunTrace {
    pub run_id: usize,
    pub accepted: Vec<EvaluatedSolution>,
    /// Perturbation cycles executed.
    pub cycles: usize,
    /// Cycle index (1-based) of the last strict improvement, 0 if none.
    pub last_improvement: usize,
}

impl RunTrace {
    pub fn transitions(&self) -> impl Iterator<Item = (&EvaluatedSolution, &EvaluatedSolution)> {
        self.accepted.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn final_fitness(&self) -> f64 {
        self.accepted.last().map_or(f64::NEG_INFINITY, |s| s.fitness)
    }
}

/// Drives the shared accept/stagnate loop. `step` maps the current optimum to
/// a candidate optimum.
fn iterate<F>(run_id: usize, start: EvaluatedSolution, stagnation: usize, mut step: F) -> RunTrace
where
    F: FnMut(&EvaluatedSolution) -> EvaluatedSolution,
{
    let mut trace = RunTrace {
        run_id,
        accepted: vec![start],
        cycles: 0,
        last_improvement: 0,
    };
    let mut current = trace.accepted[0].clone();
    let mut idle = 0;
    while idle < stagnation {
        trace.cycles += 1;
        let candidate = step(&current);
        if candidate.fitness > current.fitness {
            idle = 0;
            trace.last_improvement = trace.cycles;
        } else {
            idle += 1;
        }
        if candidate.fitness >= current.fitness {
            trace.accepted.push(candidate.clone());
            current = candidate;
        }
    }
    trace
}

fn random_start(problem: &AdditiveProblem, rng: &mut LabRng) -> EvaluatedSolution {
    let bits = Bits::random(problem.n(), rng);
    problem.evaluate(&bits).expect("length matches")
}

fn perturbed(problem: &AdditiveProblem, lo: &EvaluatedSolution, genes: &[usize]) -> EvaluatedSolution {
    problem.partial_evaluate(lo, genes).solution
}

pub fn run_trad(problem: &AdditiveProblem, config: &RunConfig, run_id: usize) -> RunTrace {
    let mut rng = rng_from_seed(config.run_seed(run_id));
    let start = climb(problem, random_start(problem, &mut rng), &mut rng);
    iterate(run_id, start, config.stagnation_cycles, |lo| {
        let genes = random_flip_mask(problem.n(), config.perturbation_strength, &mut rng);
        climb(problem, perturbed(problem, lo, &genes), &mut rng)
    })
}

/// DRILS. `vig` is the a-priori interaction graph used by PX.
pub fn run_px(
    problem: &AdditiveProblem,
    vig: &Vig,
    config: &RunConfig,
    run_id: usize,
) -> Result<RunTrace> {
    vig.check_size(problem.n())?;
    let mut rng = rng_from_seed(config.run_seed(run_id));
    let start = climb(problem, random_start(problem, &mut rng), &mut rng);
    Ok(iterate(run_id, start, config.stagnation_cycles, |lo| {
        let genes = random_flip_mask(problem.n(), config.perturbation_strength, &mut rng);
        let lo_p = climb(problem, perturbed(problem, lo, &genes), &mut rng);
        let child = partition_crossover(problem, vig, lo, &lo_p, &ComponentChoice::Greedy)
            .expect("parents share the problem's length")
            .best()
            .clone();
        climb(problem, child, &mut rng)
    }))
}

/// VIG-perturbation ILS. The learned VIG starts empty, grows across the whole
/// run, and is returned alongside the trace.
pub fn run_vigp(problem: &AdditiveProblem, config: &RunConfig, run_id: usize) -> (RunTrace, Vig) {
    let mut rng = rng_from_seed(config.run_seed(run_id));
    let alpha = config.alpha_for(problem);
    let mut learned = Vig::empty(problem.n());
    let (start, _) = climb_with_ll(problem, random_start(problem, &mut rng), &mut learned, &mut rng);
    let trace = iterate(run_id, start, config.stagnation_cycles, |lo| {
        let mask = vig_perturbation_mask(&learned, alpha, &mut rng).expect("alpha validated");
        let (next, _) =
            climb_with_ll(problem, perturbed(problem, lo, &mask.genes), &mut learned, &mut rng);
        next
    });
    (trace, learned)
}

/// Runs `config.runs` independent runs (in parallel when a rayon pool is
/// available) and returns traces in run order.
pub fn sample_runs(
    problem: &AdditiveProblem,
    config: &RunConfig,
    px_vig: Option<&Vig>,
) -> Result<Vec<RunTrace>> {
    config.validate()?;
    if config.algorithm == Algorithm::Px && px_vig.is_none() {
        return invalid("PX sampling needs an interaction graph");
    }
    (0..config.runs)
        .into_par_iter()
        .map(|run| match config.algorithm {
            Algorithm::Trad => Ok(run_trad(problem, config, run)),
            Algorithm::Px => run_px(problem, px_vig.expect("checked above"), config, run),
            Algorithm::Vigp => Ok(run_vigp(problem, config, run).0),
        })
        .collect()
}

/// Aggregates traces into a LON: nodes in first-seen order (traces taken in
/// run order), edge weights counting transitions.
pub fn build_lon(traces: &[RunTrace]) -> Result<Lon> {
    let mut ordered: Vec<&RunTrace> = traces.iter().collect();
    ordered.sort_by_key(|t| t.run_id);
    let n = ordered
        .iter()
        .flat_map(|t| t.accepted.first())
        .map(|s| s.bits.len())
        .next()
        .unwrap_or(0);
    let mut lon = Lon::new(n);
    for trace in ordered {
        if let Some(bad) = trace.accepted.iter().find(|s| s.bits.len() != n) {
            return Err(LonError::Mismatch(format!(
                "run {} has a {}-bit solution, expected {n}",
                trace.run_id,
                bad.bits.len()
            )));
        }
        let mut prev = match trace.accepted.first() {
            Some(first) => lon.add_node(first),
            None => continue,
        };
        for sol in &trace.accepted[1..] {
            let id = lon.add_node(sol);
            lon.add_transition(prev, id, 1);
            prev = id;
        }
    }
    Ok(lon)
}

/// One line per transition: `run_id src_bits dst_bits src_f dst_f`.
pub fn trace_dump(traces: &[RunTrace]) -> String {
    let mut out = String::new();
    for t in traces {
        for (a, b) in t.transitions() {
            writeln!(out, "{} {} {} {} {}", t.run_id, a.bits, b.bits, a.fitness, b.fitness).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graybox::vig_from_walsh;
    use crate::problems::{build_concatenated_traps, enumerate_optima, generate_nk, TrapShape};

    fn sep() -> AdditiveProblem {
        build_concatenated_traps(3, 3, TrapShape::Standard).unwrap()
    }

    fn ev(p: &AdditiveProblem, s: &str) -> EvaluatedSolution {
        p.evaluate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn build_lon_counts_transitions() {
        let p = sep();
        let (a, b, c) = (ev(&p, "000000000"), ev(&p, "111000000"), ev(&p, "111111000"));
        let trace = RunTrace {
            run_id: 0,
            accepted: vec![a, b.clone(), b, c],
            cycles: 3,
            last_improvement: 3,
        };
        let lon = build_lon(std::slice::from_ref(&trace)).unwrap();
        assert_eq!(lon.nodes().len(), 3);
        let w: Vec<(usize, usize, u64)> = lon.edges().iter().map(|e| (e.src, e.dst, e.weight)).collect();
        assert_eq!(w, vec![(0, 1, 1), (1, 1, 1), (1, 2, 1)]);

        let mut second = trace.clone();
        second.run_id = 1;
        let lon2 = build_lon(&[trace, second]).unwrap();
        assert!(lon2.edges().iter().all(|e| e.weight == 2));
    }

    #[test]
    fn edgeless_traces() {
        let p = sep();
        let t = RunTrace {
            run_id: 0,
            accepted: vec![ev(&p, "000000000")],
            cycles: 30,
            last_improvement: 0,
        };
        let lon = build_lon(&[t]).unwrap();
        assert_eq!(lon.nodes().len(), 1);
        assert!(lon.edges().is_empty());
    }

    #[test]
    fn mismatched_sizes_rejected() {
        let p = sep();
        let q = build_concatenated_traps(2, 3, TrapShape::Standard).unwrap();
        let t1 = RunTrace { run_id: 0, accepted: vec![ev(&p, "000000000")], cycles: 0, last_improvement: 0 };
        let t2 = RunTrace { run_id: 1, accepted: vec![ev(&q, "000000")], cycles: 0, last_improvement: 0 };
        assert!(build_lon(&[t1, t2]).is_err());
    }

    #[test]
    fn traces_are_monotone_and_stop_on_stagnation() {
        let p = generate_nk(15, 2, 4).unwrap();
        let vig = vig_from_walsh(&p).unwrap();
        for alg in Algorithm::ALL {
            let cfg = RunConfig { runs: 4, ..RunConfig::new(alg, 99) };
            for t in sample_runs(&p, &cfg, Some(&vig)).unwrap() {
                assert!(t.transitions().all(|(a, b)| b.fitness >= a.fitness));
                assert_eq!(t.cycles - t.last_improvement, cfg.stagnation_cycles);
            }
        }
    }

    #[test]
    fn f_sep_nodes_are_oracle_optima() {
        let p = sep();
        let oracle = enumerate_optima(&p).unwrap();
        for alg in Algorithm::ALL {
            let cfg = RunConfig { runs: 10, ..RunConfig::new(alg, 5) };
            let lon = build_lon(&sample_runs(&p, &cfg, Some(&Vig::from_structure(&p))).unwrap()).unwrap();
            for node in lon.nodes() {
                assert!(oracle.local.contains(&node.bits), "{alg}: {}", node.bits);
            }
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let p = generate_nk(15, 2, 1).unwrap();
        let vig = vig_from_walsh(&p).unwrap();
        for alg in Algorithm::ALL {
            let cfg = RunConfig { runs: 5, ..RunConfig::new(alg, 3) };
            let a = build_lon(&sample_runs(&p, &cfg, Some(&vig)).unwrap()).unwrap();
            let b = build_lon(&sample_runs(&p, &cfg, Some(&vig)).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn vigp_learned_vig_is_sound() {
        let p = generate_nk(15, 2, 6).unwrap();
        let exact = vig_from_walsh(&p).unwrap();
        let cfg = RunConfig::new(Algorithm::Vigp, 8);
        for run in 0..5 {
            let (_, learned) = run_vigp(&p, &cfg, run);
            assert!(learned.is_subset_of(&exact));
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = RunConfig::new(Algorithm::Trad, 0);
        cfg.runs = 0;
        assert!(cfg.validate().is_err());
        let cfg = RunConfig::new(Algorithm::Px, 0);
        assert!(sample_runs(&sep(), &cfg, None).is_err());
        assert_eq!("DRILS".parse::<Algorithm>().unwrap(), Algorithm::Px);
    }
}
