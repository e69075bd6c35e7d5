use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMethod {
    Kendall,
    Spearman,
}

impl std::str::FromStr for CorrelationMethod {
    type Err = crate::error::LonError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kendall" => Ok(CorrelationMethod::Kendall),
            "spearman" => Ok(CorrelationMethod::Spearman),
            _ => invalid(format!("unknown correlation method {s:?} (kendall or spearman)")),
        }
    }
}

/// 1-based ranks with ties given the average of the ranks they span.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 1) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = avg;
        }
        i = j;
    }
    ranks
}

fn check_pair(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return invalid(format!("length mismatch: {} vs {}", x.len(), y.len()));
    }
    Ok(())
}

/// Kendall tau-b. `None` with fewer than two points or when either input is
/// constant.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y)?;
    let n = x.len();
    let (mut concordant, mut discordant, mut ties_x, mut ties_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let dx = x[i].total_cmp(&x[j]) as i64;
            let dy = y[i].total_cmp(&y[j]) as i64;
            if dx == 0 {
                ties_x += 1;
            }
            if dy == 0 {
                ties_y += 1;
            }
            match dx * dy {
                1 => concordant += 1,
                -1 => discordant += 1,
                _ => {}
            }
        }
    }
    let pairs = (n * n.saturating_sub(1) / 2) as i64;
    let denom = (((pairs - ties_x) * (pairs - ties_y)) as f64).sqrt();
    if denom == 0.0 {
        return Ok(None);
    }
    Ok(Some(((concordant - discordant) as f64 / denom).clamp(-1.0, 1.0)))
}

/// Spearman rho as the Pearson correlation of midranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    check_pair(x, y)?;
    if x.len() < 2 {
        return Ok(None);
    }
    Ok(pearson(&midranks(x), &midranks(y)))
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    pub method: CorrelationMethod,
    /// Row-major, symmetric. A column with fewer than two usable values or
    /// no variation has missing cells throughout, diagonal included.
    pub cells: Vec<Vec<Option<f64>>>,
}

/// Pairwise-deletion correlation matrix over equally indexed columns.
pub fn correlation_matrix(
    names: &[String],
    columns: &[Vec<Option<f64>>],
    method: CorrelationMethod,
) -> Result<CorrelationMatrix> {
    if names.len() != columns.len() {
        return invalid("one name per column required");
    }
    if let Some(c) = columns.iter().find(|c| c.len() != columns[0].len()) {
        return invalid(format!("column lengths differ: {} vs {}", c.len(), columns[0].len()));
    }
    let k = columns.len();
    let mut cells = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let (x, y): (Vec<f64>, Vec<f64>) = columns[i]
                .iter()
                .zip(&columns[j])
                .filter_map(|(a, b)| Some(((*a)?, (*b)?)))
                .filter(|(a, b)| a.is_finite() && b.is_finite())
                .unzip();
            let r = if x.len() < 2 {
                None
            } else {
                match method {
                    CorrelationMethod::Kendall => kendall_tau(&x, &y)?,
                    CorrelationMethod::Spearman => spearman(&x, &y)?,
                }
            };
            cells[i][j] = r;
            cells[j][i] = r;
        }
    }
    Ok(CorrelationMatrix {
        names: names.to_vec(),
        method,
        cells,
    })
}
