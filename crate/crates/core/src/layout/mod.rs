//! One-dimensional MDS layout of LON nodes over Hamming distance, and graph
//! exports carrying fitness, layout position and edge annotations.

mod export;
mod graphml;

pub use export::{export_lon, to_dot, to_graphml, ExportFormat};
pub use graphml::parse_graphml;

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::bits::Bits;
use crate::error::{invalid, LonError, Result};
use crate::lon::Lon;
use crate::rng::rng_from_seed;

const POWER_TOL: f64 = 1e-10;
const POWER_MAX_ITER: usize = 10_000;

/// Pairwise Hamming distances. Rows are built in parallel.
pub fn hamming_matrix(points: &[Bits]) -> Result<Vec<Vec<u32>>> {
    if let Some(p) = points.iter().find(|p| p.len() != points[0].len()) {
        return Err(LonError::Mismatch(format!(
            "bit strings of length {} and {}",
            points[0].len(),
            p.len()
        )));
    }
    Ok(points
        .par_iter()
        .map(|a| points.iter().map(|b| a.hamming(b) as u32).collect())
        .collect())
}

/// Classical (Torgerson) MDS onto one axis. The dominant eigenpair of the
/// double-centred squared-distance matrix comes from shifted power iteration.
/// Output is centred; the sign puts the `anchor` point on the non-negative
/// side.
pub fn classical_mds_1d(d: &[Vec<f64>], anchor: Option<usize>) -> Result<Vec<f64>> {
    let n = d.len();
    for (i, row) in d.iter().enumerate() {
        if row.len() != n {
            return invalid("distance matrix is not square");
        }
        if row[i] != 0.0 {
            return invalid("distance matrix diagonal must be zero");
        }
        for j in 0..i {
            if (row[j] - d[j][i]).abs() > 1e-12 * (1.0 + row[j].abs()) {
                return invalid(format!("distance matrix not symmetric at ({i},{j})"));
            }
        }
    }
    if n < 2 {
        return Ok(vec![0.0; n]);
    }

    // B = -1/2 J D^2 J
    let sq: Vec<Vec<f64>> = d.iter().map(|r| r.iter().map(|v| v * v).collect()).collect();
    let row_mean: Vec<f64> = sq.iter().map(|r| r.iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let b: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| -0.5 * (sq[i][j] - row_mean[i] - row_mean[j] + grand))
                .collect()
        })
        .collect();

    // The dominant eigenvalue by magnitude is the largest one unless it is
    // negative; then shifting by its magnitude makes the spectrum
    // non-negative and a second pass finds the largest.
    let mut rng = rng_from_seed(0x6d64735f31);
    let start: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    let (mut lambda, mut v) = power_iteration(&b, 0.0, start.clone());
    if lambda < 0.0 {
        (lambda, v) = power_iteration(&b, -lambda, start);
    }
    let scale_ref = b.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max);
    if lambda <= POWER_TOL * scale_ref.max(1.0) {
        return Ok(vec![0.0; n]);
    }
    let mean = v.iter().sum::<f64>() / n as f64;
    let scale = lambda.sqrt();
    let mut x: Vec<f64> = v.iter().map(|vi| (vi - mean) * scale).collect();

    let pivot = anchor
        .filter(|&a| a < n && x[a].abs() > 1e-12)
        .or_else(|| x.iter().position(|xi| xi.abs() > 1e-12));
    if let Some(p) = pivot {
        if x[p] < 0.0 {
            x.iter_mut().for_each(|xi| *xi = -*xi);
        }
    }
    Ok(x)
}

/// Dominant eigenpair of `B + shift·I`, reported as an eigenpair of `B`.
/// Convergence is judged up to sign so a negative dominant eigenvalue does
/// not oscillate forever.
fn power_iteration(b: &[Vec<f64>], shift: f64, mut v: Vec<f64>) -> (f64, Vec<f64>) {
    normalise(&mut v);
    for _ in 0..POWER_MAX_ITER {
        let mut w: Vec<f64> = b
            .iter()
            .zip(&v)
            .map(|(row, vi)| row.iter().zip(&v).map(|(a, x)| a * x).sum::<f64>() + shift * vi)
            .collect();
        if normalise(&mut w) == 0.0 {
            return (-shift, v);
        }
        let same: f64 = w.iter().zip(&v).map(|(a, x)| (a - x).abs()).fold(0.0, f64::max);
        let flipped: f64 = w.iter().zip(&v).map(|(a, x)| (a + x).abs()).fold(0.0, f64::max);
        v = w;
        if same.min(flipped) < POWER_TOL {
            break;
        }
    }
    let bv: Vec<f64> = b.iter().map(|row| row.iter().zip(&v).map(|(a, x)| a * x).sum()).collect();
    (bv.iter().zip(&v).map(|(a, x)| a * x).sum(), v)
}

fn normalise(v: &mut [f64]) -> f64 {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

#[derive(Debug, Clone, PartialEq)]
pub struct LayoutRow {
    pub id: usize,
    pub x: f64,
    pub fitness: f64,
}

/// x from MDS, y (and the colour/size key) is fitness.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LayoutTable {
    pub rows: Vec<LayoutRow>,
}

impl LayoutTable {
    pub fn x_of(&self, id: usize) -> Option<f64> {
        self.rows.iter().find(|r| r.id == id).map(|r| r.x)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("id\tx\tfitness\n");
        for r in &self.rows {
            writeln!(out, "{}\t{:.9}\t{}", r.id, r.x, r.fitness).unwrap();
        }
        out
    }
}

/// Lays out every node of the LON. Reflection is fixed by the fittest node.
pub fn layout_lon(lon: &Lon) -> Result<LayoutTable> {
    let bits: Vec<Bits> = lon.nodes().iter().map(|v| v.bits.clone()).collect();
    let d: Vec<Vec<f64>> = hamming_matrix(&bits)?
        .into_iter()
        .map(|r| r.into_iter().map(f64::from).collect())
        .collect();
    let fittest = lon
        .nodes()
        .iter()
        .max_by(|a, b| a.fitness.total_cmp(&b.fitness).then(b.id.cmp(&a.id)))
        .map(|v| v.id);
    let x = classical_mds_1d(&d, fittest)?;
    Ok(LayoutTable {
        rows: lon
            .nodes()
            .iter()
            .zip(x)
            .map(|(v, x)| LayoutRow {
                id: v.id,
                x,
                fitness: v.fitness,
            })
            .collect(),
    })
}
