//! Local optima networks with subfunction-change edge annotations.

mod format;
mod validate;

pub use format::{parse_lon, write_lon};
pub use validate::{validate_against_oracle, OracleCheck};

use std::collections::{BTreeMap, HashMap};

use crate::bits::Bits;
use crate::error::{LonError, Result};
use crate::problems::{AdditiveProblem, EvaluatedSolution};

/// Subfunction values closer than this count as unchanged.
pub const CHANGE_TOL: f64 = 1e-9;
/// Fitness comparisons (monotonicity, improvement, global flags).
pub const FITNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct LonNode {
    pub id: usize,
    pub bits: Bits,
    pub fitness: f64,
    /// Empty when the node was read from a file and not yet annotated.
    pub sub_values: Vec<f64>,
    pub is_global: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct EdgeAnnotation {
    pub changed: usize,
    pub positive: usize,
    pub negative: usize,
}

impl EdgeAnnotation {
    pub fn between(src: &[f64], dst: &[f64]) -> EdgeAnnotation {
        debug_assert_eq!(src.len(), dst.len());
        let mut a = EdgeAnnotation::default();
        for (s, d) in src.iter().zip(dst) {
            let delta = d - s;
            if delta > CHANGE_TOL {
                a.positive += 1;
            } else if delta < -CHANGE_TOL {
                a.negative += 1;
            }
        }
        a.changed = a.positive + a.negative;
        a
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LonEdge {
    pub src: usize,
    pub dst: usize,
    pub weight: u64,
    pub annotation: EdgeAnnotation,
}

impl LonEdge {
    pub fn is_self_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Directed graph of local optima. Node ids are dense and follow first-seen
/// order; edges are kept sorted by `(src, dst)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Lon {
    n: usize,
    nodes: Vec<LonNode>,
    edges: Vec<LonEdge>,
    index: HashMap<Bits, usize>,
}

impl Lon {
    pub fn new(n: usize) -> Self {
        Lon {
            n,
            ..Default::default()
        }
    }

    /// Assembles a LON from parts, checking ids and endpoints.
    pub fn from_parts(n: usize, nodes: Vec<LonNode>, edges: Vec<LonEdge>) -> Result<Self> {
        let mut lon = Lon::new(n);
        for (i, node) in nodes.into_iter().enumerate() {
            if node.id != i {
                return Err(LonError::InvalidArgument(format!(
                    "node ids must be dense: position {i} has id {}",
                    node.id
                )));
            }
            if node.bits.len() != n {
                return Err(LonError::Mismatch(format!(
                    "node {i} has {} bits, expected {n}",
                    node.bits.len()
                )));
            }
            if lon.index.insert(node.bits.clone(), i).is_some() {
                return Err(LonError::InvalidArgument(format!("duplicate node {}", node.bits)));
            }
            lon.nodes.push(node);
        }
        let mut seen = BTreeMap::new();
        for e in edges {
            if e.src >= lon.nodes.len() || e.dst >= lon.nodes.len() {
                return Err(LonError::InvalidArgument(format!(
                    "edge {}->{} references a missing node",
                    e.src, e.dst
                )));
            }
            if e.weight == 0 {
                return Err(LonError::InvalidArgument(format!(
                    "edge {}->{} has zero weight",
                    e.src, e.dst
                )));
            }
            if seen.insert((e.src, e.dst), e).is_some() {
                return Err(LonError::InvalidArgument("duplicate edge".into()));
            }
        }
        lon.edges = seen.into_values().collect();
        Ok(lon)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[LonNode] {
        &self.nodes
    }

    pub fn edges(&self) -> &[LonEdge] {
        &self.edges
    }

    pub fn node(&self, id: usize) -> &LonNode {
        &self.nodes[id]
    }

    pub fn node_id(&self, bits: &Bits) -> Option<usize> {
        self.index.get(bits).copied()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Returns the node id for `sol`, inserting it if new.
    pub fn add_node(&mut self, sol: &EvaluatedSolution) -> usize {
        if let Some(&id) = self.index.get(&sol.bits) {
            return id;
        }
        let id = self.nodes.len();
        self.index.insert(sol.bits.clone(), id);
        self.nodes.push(LonNode {
            id,
            bits: sol.bits.clone(),
            fitness: sol.fitness,
            sub_values: sol.sub_values.clone(),
            is_global: false,
        });
        id
    }

    /// Adds `count` to the weight of `src → dst`, creating the edge if needed.
    pub fn add_transition(&mut self, src: usize, dst: usize, count: u64) {
        match self
            .edges
            .binary_search_by(|e| (e.src, e.dst).cmp(&(src, dst)))
        {
            Ok(i) => self.edges[i].weight += count,
            Err(i) => {
                let annotation = self.annotation_for(src, dst);
                self.edges.insert(
                    i,
                    LonEdge {
                        src,
                        dst,
                        weight: count,
                        annotation,
                    },
                );
            }
        }
    }

    fn annotation_for(&self, src: usize, dst: usize) -> EdgeAnnotation {
        let (a, b) = (&self.nodes[src].sub_values, &self.nodes[dst].sub_values);
        if a.is_empty() || a.len() != b.len() {
            EdgeAnnotation::default()
        } else {
            EdgeAnnotation::between(a, b)
        }
    }

    /// Flags every node whose fitness is within tolerance of `global_fitness`.
    pub fn mark_global(&mut self, global_fitness: f64) {
        for node in &mut self.nodes {
            node.is_global = (node.fitness - global_fitness).abs() <= FITNESS_TOL;
        }
    }

    /// Re-evaluates every node under `problem` and recomputes all edge
    /// annotations from the per-subfunction values.
    pub fn annotate_edges(&self, problem: &AdditiveProblem) -> Result<Lon> {
        if problem.n() != self.n {
            return Err(LonError::Mismatch(format!(
                "LON has n={}, problem has n={}",
                self.n,
                problem.n()
            )));
        }
        let mut out = self.clone();
        for node in &mut out.nodes {
            let eval = problem.evaluate(&node.bits)?;
            if (eval.fitness - node.fitness).abs() > FITNESS_TOL {
                return Err(LonError::Mismatch(format!(
                    "node {} has fitness {} but the problem gives {}",
                    node.bits, node.fitness, eval.fitness
                )));
            }
            node.sub_values = eval.sub_values;
        }
        for i in 0..out.edges.len() {
            let (s, d) = (out.edges[i].src, out.edges[i].dst);
            out.edges[i].annotation = out.annotation_for(s, d);
        }
        Ok(out)
    }

    /// Edges whose destination is strictly fitter than the source.
    pub fn improving_edges(&self) -> Vec<&LonEdge> {
        self.edges.iter().filter(|e| self.is_improving(e)).collect()
    }

    pub fn is_improving(&self, e: &LonEdge) -> bool {
        self.nodes[e.dst].fitness > self.nodes[e.src].fitness + FITNESS_TOL
    }

    /// Equal-fitness edges between distinct nodes.
    pub fn is_neutral(&self, e: &LonEdge) -> bool {
        !e.is_self_loop()
            && (self.nodes[e.dst].fitness - self.nodes[e.src].fitness).abs() <= FITNESS_TOL
    }

    /// Edges that go downhill.
    pub fn monotonicity_violations(&self) -> Vec<&LonEdge> {
        self.edges
            .iter()
            .filter(|e| self.nodes[e.dst].fitness < self.nodes[e.src].fitness - FITNESS_TOL)
            .collect()
    }

    pub fn total_weight(&self) -> u64 {
        self.edges.iter().map(|e| e.weight).sum()
    }
}

/// Union of two LONs over the same problem: nodes keyed by bit vector
/// (`a`'s ids first), weights summed, annotations recomputed.
pub fn merge_lons(a: &Lon, b: &Lon) -> Result<Lon> {
    if a.n != b.n {
        return Err(LonError::Mismatch(format!(
            "cannot merge LONs with n={} and n={}",
            a.n, b.n
        )));
    }
    let mut out = Lon::new(a.n);
    let mut file_annotations: HashMap<(usize, usize), EdgeAnnotation> = HashMap::new();
    for lon in [a, b] {
        let map: Vec<usize> = lon
            .nodes
            .iter()
            .map(|node| {
                let id = out.add_node(&EvaluatedSolution {
                    bits: node.bits.clone(),
                    fitness: node.fitness,
                    sub_values: node.sub_values.clone(),
                });
                out.nodes[id].is_global |= node.is_global;
                id
            })
            .collect();
        for e in &lon.edges {
            out.add_transition(map[e.src], map[e.dst], e.weight);
            file_annotations.insert((map[e.src], map[e.dst]), e.annotation);
        }
    }
    // without sub-values the stored annotations are the only source
    for e in &mut out.edges {
        if out.nodes[e.src].sub_values.is_empty() || out.nodes[e.dst].sub_values.is_empty() {
            e.annotation = file_annotations[&(e.src, e.dst)];
        }
    }
    Ok(out)
}
