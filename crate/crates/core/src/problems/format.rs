//! Line-oriented instance files and DIMACS CNF for MAX3SAT.
//!
//! ```text
//! kbounded v1
//! n 9
//! kind trap_concat
//! global 9
//! 0 1 2 | 2 1 1 0 1 0 0 3
//! ```
//!
//! `global` is optional. Each subfunction line lists its variable indices,
//! a `|`, then `2^arity` table values in key order.

use std::fmt::Write as _;

use super::builders::{max3sat_from_clauses, Clause};
use super::{AdditiveProblem, ProblemKind, Subfunction};
use crate::error::{parse_err, LonError, Result};

pub const INSTANCE_HEADER: &str = "kbounded v1";

pub fn write_instance(problem: &AdditiveProblem) -> String {
    let mut out = String::new();
    writeln!(out, "{INSTANCE_HEADER}").unwrap();
    writeln!(out, "n {}", problem.n()).unwrap();
    writeln!(out, "kind {}", problem.kind()).unwrap();
    if let Some(g) = problem.known_global_fitness() {
        writeln!(out, "global {g}").unwrap();
    }
    for sub in problem.subfunctions() {
        let idx: Vec<String> = sub.indices().iter().map(ToString::to_string).collect();
        let vals: Vec<String> = sub.table().iter().map(ToString::to_string).collect();
        writeln!(out, "{} | {}", idx.join(" "), vals.join(" ")).unwrap();
    }
    out
}

pub fn parse_instance(text: &str) -> Result<AdditiveProblem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, header) = lines.next().ok_or_else(|| parse_err(1, "empty instance file"))?;
    if header != INSTANCE_HEADER {
        return Err(parse_err(no, format!("expected {INSTANCE_HEADER:?}, got {header:?}")));
    }
    let n: usize = keyed(lines.next(), "n")?;
    let kind: ProblemKind = keyed(lines.next(), "kind")?;

    let mut global = None;
    let mut subs = Vec::new();
    for (no, line) in lines {
        if let Some(rest) = line.strip_prefix("global ") {
            global = Some(
                rest.trim()
                    .parse::<f64>()
                    .map_err(|e| parse_err(no, e.to_string()))?,
            );
            continue;
        }
        let (lhs, rhs) = line
            .split_once('|')
            .ok_or_else(|| parse_err(no, "subfunction line lacks '|'"))?;
        let indices = lhs
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| parse_err(no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let table = rhs
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| parse_err(no, e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        subs.push(Subfunction::new(indices, table).map_err(|e| parse_err(no, e.to_string()))?);
    }
    AdditiveProblem::new(n, kind, subs, global)
}

fn keyed<T: std::str::FromStr>(line: Option<(usize, &str)>, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    let (no, line) = line.ok_or_else(|| parse_err(0, format!("missing `{key}` line")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| parse_err(no, format!("expected `{key} <value>`, got {line:?}")))?;
    value.trim().parse().map_err(|e: T::Err| parse_err(no, e.to_string()))
}

/// DIMACS CNF for a problem whose every subfunction is a 3-literal clause.
pub fn to_dimacs(problem: &AdditiveProblem) -> Result<String> {
    let clauses = problem
        .subfunctions()
        .iter()
        .enumerate()
        .map(|(s, sub)| {
            Clause::from_subfunction(sub).ok_or_else(|| {
                LonError::InvalidArgument(format!("subfunction {s} is not a 3-literal clause"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    writeln!(out, "p cnf {} {}", problem.n(), clauses.len()).unwrap();
    for c in clauses {
        for j in 0..3 {
            let lit = c.vars[j] as i64 + 1;
            write!(out, "{} ", if c.negated[j] { -lit } else { lit }).unwrap();
        }
        writeln!(out, "0").unwrap();
    }
    Ok(out)
}

pub fn from_dimacs(text: &str) -> Result<AdditiveProblem> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<i64> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "cnf" {
                return Err(parse_err(no, "expected `p cnf <n> <m>`"));
            }
            let n = parts[1].parse().map_err(|_| parse_err(no, "bad variable count"))?;
            let m = parts[2].parse().map_err(|_| parse_err(no, "bad clause count"))?;
            header = Some((n, m));
            continue;
        }
        let (n, _) = header.ok_or_else(|| parse_err(no, "clause before `p cnf` header"))?;
        for tok in line.split_whitespace() {
            let lit: i64 = tok.parse().map_err(|_| parse_err(no, format!("bad literal {tok:?}")))?;
            if lit != 0 {
                if lit.unsigned_abs() as usize > n {
                    return Err(parse_err(no, format!("literal {lit} exceeds n={n}")));
                }
                pending.push(lit);
                continue;
            }
            if pending.len() != 3 {
                return Err(parse_err(
                    no,
                    format!("clause has {} literals, MAX3SAT needs 3", pending.len()),
                ));
            }
            let clause = Clause {
                vars: [0, 1, 2].map(|j| pending[j].unsigned_abs() as usize - 1),
                negated: [0, 1, 2].map(|j| pending[j] < 0),
            };
            clauses.push(clause.canonical());
            pending.clear();
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p cnf` header"))?;
    if !pending.is_empty() {
        return Err(parse_err(0, "unterminated final clause"));
    }
    if clauses.len() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} clauses, found {}", clauses.len()),
        ));
    }
    max3sat_from_clauses(n, &clauses)
}
