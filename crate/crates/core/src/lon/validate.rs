use std::collections::HashSet;
use std::fmt;

use super::{EdgeAnnotation, Lon, FITNESS_TOL};
use crate::bits::Bits;
use crate::error::Result;
use crate::problems::{AdditiveProblem, OptimaSet};

/// One named verification outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for OracleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{}: {status}", self.name)
        } else {
            write!(f, "{}: {status} ({})", self.name, self.detail)
        }
    }
}

fn check(name: &'static str, failures: Vec<String>) -> OracleCheck {
    let detail = match failures.len() {
        0 => String::new(),
        n => format!("{n} violation(s), first: {}", failures[0]),
    };
    OracleCheck {
        name,
        passed: failures.is_empty(),
        detail,
    }
}

/// Checks a LON against the exhaustive optima of its problem: nodes are true
/// strict local optima with correct fitness, edges never go downhill, and
/// every stored annotation matches the one recomputed from subfunction
/// values.
pub fn validate_against_oracle(
    lon: &Lon,
    problem: &AdditiveProblem,
    optima: &OptimaSet,
) -> Result<Vec<OracleCheck>> {
    let annotated = lon.annotate_edges(problem);
    let locals: HashSet<&Bits> = optima.local.iter().collect();

    let not_local = lon
        .nodes()
        .iter()
        .filter(|v| !locals.contains(&v.bits))
        .map(|v| v.bits.to_string())
        .collect();
    let fitness_wrong = lon
        .nodes()
        .iter()
        .filter(|v| (problem.fitness(&v.bits) - v.fitness).abs() > FITNESS_TOL)
        .map(|v| format!("{} stored {}", v.bits, v.fitness))
        .collect();
    let downhill = lon
        .monotonicity_violations()
        .iter()
        .map(|e| format!("{} -> {}", lon.node(e.src).bits, lon.node(e.dst).bits))
        .collect();

    let mut annotation_wrong = Vec::new();
    let mut delta_wrong = Vec::new();
    if let Ok(fresh) = &annotated {
        for (stored, e) in lon.edges().iter().zip(fresh.edges()) {
            let a = stored.annotation;
            let label = || format!("{} -> {}", lon.node(e.src).bits, lon.node(e.dst).bits);
            if a.positive + a.negative != a.changed || a != e.annotation {
                annotation_wrong.push(label());
            }
            let (src, dst) = (fresh.node(e.src), fresh.node(e.dst));
            let signed: f64 = dst.sub_values.iter().zip(&src.sub_values).map(|(d, s)| d - s).sum();
            if (signed - (dst.fitness - src.fitness)).abs() > FITNESS_TOL
                || EdgeAnnotation::between(&src.sub_values, &dst.sub_values) != e.annotation
            {
                delta_wrong.push(label());
            }
        }
    } else if let Err(err) = &annotated {
        annotation_wrong.push(err.to_string());
    }

    let flagged: HashSet<&Bits> = lon.nodes().iter().filter(|v| v.is_global).map(|v| &v.bits).collect();
    let truly_global: HashSet<&Bits> = optima.global.iter().collect();
    let flags_wrong = lon
        .nodes()
        .iter()
        .filter(|v| flagged.contains(&v.bits) != truly_global.contains(&v.bits))
        .map(|v| v.bits.to_string())
        .collect();
    let found = lon.nodes().iter().filter(|v| truly_global.contains(&v.bits)).count();

    Ok(vec![
        check("all nodes are true local optima", not_local),
        check("node fitness matches evaluation", fitness_wrong),
        check("edges are monotonic", downhill),
        check("annotations consistent", annotation_wrong),
        check("signed subfunction delta equals fitness delta", delta_wrong),
        check("global flags match oracle", flags_wrong),
        OracleCheck {
            name: "global optima sampled",
            passed: true,
            detail: format!("found {found} / expected {}", optima.global.len()),
        },
    ])
}
