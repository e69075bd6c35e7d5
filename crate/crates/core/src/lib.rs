pub mod bits;
pub mod cli;
pub mod error;
pub mod graybox;
pub mod layout;
pub mod lon;
pub mod metrics;
pub mod problems;
pub mod rng;
pub mod sampler;
pub mod stats;

pub use bits::Bits;
pub use error::{LonError, Result};
