use std::fmt::Write as _;

use crate::error::{invalid, parse_err, Result};
use crate::problems::AdditiveProblem;

/// Symmetric, irreflexive variable interaction graph stored as a dense
/// boolean matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vig {
    n: usize,
    adj: Vec<bool>,
}

impl Vig {
    pub fn empty(n: usize) -> Self {
        Vig {
            n,
            adj: vec![false; n * n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut v = Vig::empty(n);
        for g in 0..n {
            for h in g + 1..n {
                v.add_edge(g, h);
            }
        }
        v
    }

    /// Co-occurrence graph: `g ~ h` iff some subfunction reads both.
    pub fn from_structure(problem: &AdditiveProblem) -> Self {
        let mut v = Vig::empty(problem.n());
        for sub in problem.subfunctions() {
            let idx = sub.indices();
            for (a, &g) in idx.iter().enumerate() {
                for &h in &idx[a + 1..] {
                    v.add_edge(g, h);
                }
            }
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `{g, h}`; returns whether it was new. Self-pairs are ignored.
    pub fn add_edge(&mut self, g: usize, h: usize) -> bool {
        if g == h || self.adj[g * self.n + h] {
            return false;
        }
        self.adj[g * self.n + h] = true;
        self.adj[h * self.n + g] = true;
        true
    }

    #[inline]
    pub fn has_edge(&self, g: usize, h: usize) -> bool {
        self.adj[g * self.n + h]
    }

    pub fn neighbors(&self, g: usize) -> Vec<usize> {
        (0..self.n).filter(|&h| self.has_edge(g, h)).collect()
    }

    pub fn degree(&self, g: usize) -> usize {
        self.adj[g * self.n..(g + 1) * self.n].iter().filter(|&&b| b).count()
    }

    /// Undirected edges as `(g, h)` with `g < h`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for g in 0..self.n {
            for h in g + 1..self.n {
                if self.has_edge(g, h) {
                    out.push((g, h));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&b| b).count() / 2
    }

    pub fn is_subset_of(&self, other: &Vig) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(&a, &b)| !a || b)
    }

    pub fn union_with(&mut self, other: &Vig) {
        assert_eq!(self.n, other.n);
        for (a, &b) in self.adj.iter_mut().zip(&other.adj) {
            *a |= b;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vig v1 n={}\n", self.n);
        for (g, h) in self.edges() {
            writeln!(out, "{g} {h}").unwrap();
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Vig> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty VIG file"))?;
        let n: usize = header
            .trim()
            .strip_prefix("vig v1 n=")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| parse_err(1, format!("bad VIG header {header:?}")))?;
        let mut vig = Vig::empty(n);
        for (i, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(i + 1, format!("bad index {t:?}"))))
                .collect::<Result<_>>()?;
            match nums[..] {
                [g, h] if g < h && h < n => {
                    vig.add_edge(g, h);
                }
                _ => return Err(parse_err(i + 1, format!("expected `g h` with g < h < {n}"))),
            }
        }
        Ok(vig)
    }

    pub fn check_size(&self, n: usize) -> Result<()> {
        if self.n != n {
            return invalid(format!("VIG has n={}, expected {n}", self.n));
        }
        Ok(())
    }
}
