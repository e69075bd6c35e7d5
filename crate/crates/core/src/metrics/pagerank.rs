use crate::lon::Lon;

pub const DEFAULT_DAMPING: f64 = 0.85;
const RESIDUAL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1000;

/// Weighted pagerank over all LON edges, self-loops included. Nodes without
/// outgoing weight spread their mass uniformly.
pub fn pagerank(lon: &Lon, damping: f64) -> Vec<f64> {
    let n = lon.nodes().len();
    if n == 0 {
        return Vec::new();
    }
    let mut out_weight = vec![0.0; n];
    for e in lon.edges() {
        out_weight[e.src] += e.weight as f64;
    }
    let uniform = 1.0 / n as f64;
    let mut pr = vec![uniform; n];
    for _ in 0..MAX_ITERATIONS {
        let dangling: f64 = (0..n).filter(|&v| out_weight[v] == 0.0).map(|v| pr[v]).sum();
        let base = (1.0 - damping) * uniform + damping * dangling * uniform;
        let mut next = vec![base; n];
        for e in lon.edges() {
            next[e.dst] += damping * pr[e.src] * e.weight as f64 / out_weight[e.src];
        }
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|x| *x /= total);
        let residual: f64 = next.iter().zip(&pr).map(|(a, b)| (a - b).abs()).sum();
        pr = next;
        if residual < RESIDUAL {
            break;
        }
    }
    pr
}

/// Highest pagerank among global nodes; `Some(0.0)` if none was sampled and
/// `None` for an empty LON.
pub fn pagerank_of_global(lon: &Lon, damping: f64) -> Option<f64> {
    if lon.is_empty() {
        return None;
    }
    let pr = pagerank(lon, damping);
    Some(
        lon.nodes()
            .iter()
            .filter(|v| v.is_global)
            .map(|v| pr[v.id])
            .fold(0.0, f64::max),
    )
}
