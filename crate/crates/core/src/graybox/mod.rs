//! Grey-box machinery: variable interaction graphs, Walsh analysis, partition
//! crossover, VIG-guided perturbation and first-improvement hill climbing.

mod climb;
mod perturb;
mod px;
mod vig;
mod walsh;

pub use climb::{climb, climb_with_ll, fihc, fihc_with_ll, LinkageStats};
pub use perturb::{random_flip_mask, vig_perturbation_mask, vig_perturbation_mask_at, PerturbationMask};
pub use px::{partition_crossover, px_components, ComponentChoice, PxOutcome};
pub use vig::Vig;
pub use walsh::{
    fwht, inverse_walsh, nonlinearity_check, vig_from_walsh, walsh_dump, WalshCoefficients,
};

/// Absolute tolerance for "nonzero" Walsh coefficients and for the
/// non-linearity inequality. Integer-valued problems are exact anyway.
pub const INTERACTION_TOL: f64 = 1e-9;
