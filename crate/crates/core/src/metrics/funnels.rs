use std::collections::VecDeque;

use crate::lon::Lon;

/// The nine funnel measures. Ratios with a zero denominator are `None`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FunnelMetrics {
    pub n_sinks: usize,
    pub n_global_sinks: usize,
    pub prop_global_sinks: Option<f64>,
    pub global_funnel_fraction: Option<f64>,
    pub mean_funnel_size: Option<f64>,
    pub max_funnel_size: usize,
    pub global_sink_incoming_strength: Option<f64>,
    pub mean_improving_path_length_to_global: Option<f64>,
    pub n_funnels: usize,
}

/// Improving-edge adjacency as (successors, predecessors).
fn improving_adjacency(lon: &Lon) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = lon.nodes().len();
    let mut out = vec![Vec::new(); n];
    let mut inc = vec![Vec::new(); n];
    for e in lon.improving_edges() {
        out[e.src].push(e.dst);
        inc[e.dst].push(e.src);
    }
    (out, inc)
}

/// Multi-source BFS along predecessor lists; `dist[v]` is the improving-path
/// length from `v` to the nearest source.
fn reverse_bfs(inc: &[Vec<usize>], sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; inc.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap() + 1;
        for &u in &inc[v] {
            if dist[u].is_none() {
                dist[u] = Some(d);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// A topological order of the improving-edge subgraph, or `None` if it has a
/// cycle (which strict fitness increase rules out).
pub fn improving_topological_order(lon: &Lon) -> Option<Vec<usize>> {
    let (out, inc) = improving_adjacency(lon);
    let mut indeg: Vec<usize> = inc.iter().map(Vec::len).collect();
    let mut queue: VecDeque<usize> = (0..out.len()).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(out.len());
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (order.len() == out.len()).then_some(order)
}

pub fn funnel_metrics(lon: &Lon) -> FunnelMetrics {
    let nodes = lon.nodes();
    if nodes.is_empty() {
        return FunnelMetrics::default();
    }
    let (out, inc) = improving_adjacency(lon);
    let sinks: Vec<usize> = (0..nodes.len()).filter(|&v| out[v].is_empty()).collect();
    let global_sinks: Vec<usize> = sinks.iter().copied().filter(|&v| nodes[v].is_global).collect();

    let funnel_sizes: Vec<usize> = sinks
        .iter()
        .map(|&s| reverse_bfs(&inc, &[s]).iter().filter(|d| d.is_some()).count())
        .collect();
    let to_global = reverse_bfs(&inc, &global_sinks);
    let reached: Vec<usize> = to_global.iter().flatten().copied().collect();

    let total_weight = lon.total_weight();
    let into_global: u64 = lon
        .edges()
        .iter()
        .filter(|e| nodes[e.dst].is_global && out[e.dst].is_empty())
        .map(|e| e.weight)
        .sum();

    let n = nodes.len() as f64;
    FunnelMetrics {
        n_sinks: sinks.len(),
        n_global_sinks: global_sinks.len(),
        prop_global_sinks: (!sinks.is_empty()).then(|| global_sinks.len() as f64 / sinks.len() as f64),
        global_funnel_fraction: Some(reached.len() as f64 / n),
        mean_funnel_size: (!funnel_sizes.is_empty())
            .then(|| funnel_sizes.iter().sum::<usize>() as f64 / funnel_sizes.len() as f64),
        max_funnel_size: funnel_sizes.iter().copied().max().unwrap_or(0),
        global_sink_incoming_strength: (total_weight > 0)
            .then(|| into_global as f64 / total_weight as f64),
        mean_improving_path_length_to_global: (!reached.is_empty())
            .then(|| reached.iter().sum::<usize>() as f64 / reached.len() as f64),
        n_funnels: sinks.len(),
    }
}

/// `(neutral_edge_fraction, mean_plateau_size)`. A plateau is a connected
/// component of at least two nodes in the undirected neutral-edge subgraph.
pub fn neutrality_metrics(lon: &Lon) -> (f64, f64) {
    let proper: Vec<_> = lon.edges().iter().filter(|e| !e.is_self_loop()).collect();
    let neutral: Vec<_> = proper.iter().filter(|e| lon.is_neutral(e)).collect();
    let fraction = if proper.is_empty() {
        0.0
    } else {
        neutral.len() as f64 / proper.len() as f64
    };

    let mut parent: Vec<usize> = (0..lon.nodes().len()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in &neutral {
        let (a, b) = (find(&mut parent, e.src), find(&mut parent, e.dst));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut sizes = vec![0usize; parent.len()];
    for v in 0..parent.len() {
        let r = find(&mut parent, v);
        sizes[r] += 1;
    }
    let plateaus: Vec<usize> = sizes.into_iter().filter(|&s| s >= 2).collect();
    let mean_plateau = if plateaus.is_empty() {
        0.0
    } else {
        plateaus.iter().sum::<usize>() as f64 / plateaus.len() as f64
    };
    (fraction, mean_plateau)
}
