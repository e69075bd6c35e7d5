use rand::seq::index::sample;
use rand::Rng;

use super::Vig;
use crate::error::{invalid, Result};

/// Genes to flip, grown around an anchor gene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationMask {
    /// Sorted, contains `anchor`.
    pub genes: Vec<usize>,
    pub anchor: usize,
}

/// VIG-based perturbation: a uniform anchor plus its VIG neighbours, capped
/// at `alpha` neighbours sampled without replacement.
pub fn vig_perturbation_mask<R: Rng + ?Sized>(
    vig: &Vig,
    alpha: usize,
    rng: &mut R,
) -> Result<PerturbationMask> {
    if vig.n() == 0 {
        return invalid("cannot perturb an empty genotype");
    }
    let anchor = rng.gen_range(0..vig.n());
    vig_perturbation_mask_at(vig, anchor, alpha, rng)
}

pub fn vig_perturbation_mask_at<R: Rng + ?Sized>(
    vig: &Vig,
    anchor: usize,
    alpha: usize,
    rng: &mut R,
) -> Result<PerturbationMask> {
    if alpha == 0 {
        return invalid("alpha must be >= 1");
    }
    if anchor >= vig.n() {
        return invalid(format!("anchor {anchor} out of range"));
    }
    let deps = vig.neighbors(anchor);
    let mut genes = if deps.len() <= alpha {
        deps
    } else {
        sample(rng, deps.len(), alpha)
            .into_iter()
            .map(|i| deps[i])
            .collect()
    };
    genes.push(anchor);
    genes.sort_unstable();
    Ok(PerturbationMask { genes, anchor })
}

/// `strength` distinct uniformly chosen genes (all genes if `strength >= n`).
pub fn random_flip_mask<R: Rng + ?Sized>(n: usize, strength: usize, rng: &mut R) -> Vec<usize> {
    let mut genes = sample(rng, n, strength.min(n)).into_vec();
    genes.sort_unstable();
    genes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{build_concatenated_traps, TrapShape};
    use crate::rng::rng_from_seed;

    fn sep_vig() -> Vig {
        Vig::from_structure(&build_concatenated_traps(3, 3, TrapShape::Standard).unwrap())
    }

    #[test]
    fn whole_neighbourhood_under_cap() {
        let mut rng = rng_from_seed(1);
        let m = vig_perturbation_mask_at(&sep_vig(), 0, 10, &mut rng).unwrap();
        assert_eq!(m.genes, vec![0, 1, 2]);
        assert_eq!(m.anchor, 0);
    }

    #[test]
    fn capped_neighbourhood() {
        let mut rng = rng_from_seed(2);
        for _ in 0..20 {
            let m = vig_perturbation_mask_at(&sep_vig(), 0, 1, &mut rng).unwrap();
            assert_eq!(m.genes.len(), 2);
            assert!(m.genes == vec![0, 1] || m.genes == vec![0, 2]);
        }
    }

    #[test]
    fn complete_graph_covers_everything() {
        let mut rng = rng_from_seed(3);
        let m = vig_perturbation_mask(&Vig::complete(6), 5, &mut rng).unwrap();
        assert_eq!(m.genes, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn empty_row_is_anchor_only() {
        let mut rng = rng_from_seed(4);
        let m = vig_perturbation_mask(&Vig::empty(5), 3, &mut rng).unwrap();
        assert_eq!(m.genes, vec![m.anchor]);
        assert!(vig_perturbation_mask(&Vig::empty(5), 0, &mut rng).is_err());
    }

    #[test]
    fn flip_mask_is_distinct() {
        let mut rng = rng_from_seed(5);
        for _ in 0..50 {
            let g = random_flip_mask(9, 3, &mut rng);
            assert_eq!(g.len(), 3);
            assert!(g.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(random_flip_mask(2, 3, &mut rng), vec![0, 1]);
    }
}
