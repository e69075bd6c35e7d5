//! Command-line front end.

mod commands;
pub mod manifest;
pub mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Result;
use crate::sampler::Algorithm;

#[derive(Debug, Parser)]
#[command(name = "lonlab", version, about = "Local optima networks for k-bounded pseudo-boolean problems")]
pub struct Cli {
    /// Root seed for every random choice.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Output file or directory (stdout when omitted, where allowed).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Graph format: tsv, dot or graphml.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// More log output (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenProblem {
    Trap,
    Bimodal,
    TrapOverlap,
    BimodalOverlap,
    Nk,
    Max3sat,
    Deceptive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Deceptive,
    Max3sat,
    Nk,
}

#[derive(Debug, clap::Args)]
pub struct SamplerArgs {
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    /// Cycles without strict improvement before a run stops.
    #[arg(long, default_value_t = 30)]
    pub stagnation: usize,
    /// Bits flipped by random perturbation.
    #[arg(long, default_value_t = 3)]
    pub perturb: usize,
    /// Cap on VIG-perturbation neighbours (default: largest arity).
    #[arg(long)]
    pub alpha: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate benchmark instances into the --out directory.
    Gen {
        #[arg(long, value_enum)]
        problem: GenProblem,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        overlap: usize,
        #[arg(long)]
        cyclic: bool,
        #[arg(long)]
        conflicting: bool,
        #[arg(long, default_value_t = 4.27)]
        cr: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Also write DIMACS CNF for MAX3SAT instances.
        #[arg(long)]
        dimacs: bool,
    },
    /// Sample a LON for one instance and algorithm.
    BuildLon {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        alg: Algorithm,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Recompute edge annotations and global flags of a LON file.
    Annotate {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        lon: PathBuf,
    },
    /// Metrics CSV for one or more LONs of an instance.
    Metrics {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, required = true, num_args = 1..)]
        lon: Vec<PathBuf>,
        /// Algorithm label (default: taken from `<name>.<alg>.lon.tsv`).
        #[arg(long)]
        alg: Option<String>,
        /// Instance label (default: instance file name).
        #[arg(long)]
        name: Option<String>,
    },
    /// Pairwise Mann-Whitney comparisons between algorithms.
    Compare {
        #[arg(long)]
        metrics: PathBuf,
        /// Metric to compare (repeatable; default all).
        #[arg(long)]
        metric: Vec<String>,
    },
    /// Correlation matrix of metrics across LONs.
    Correlate {
        #[arg(long)]
        metrics: PathBuf,
        #[arg(long, default_value = "kendall")]
        method: String,
        /// Only rows of this algorithm.
        #[arg(long)]
        alg: Option<String>,
    },
    /// One-dimensional MDS layout of a LON.
    Layout {
        #[arg(long)]
        lon: PathBuf,
    },
    /// Export a LON as tsv, dot or graphml (--format).
    Export {
        #[arg(long)]
        lon: PathBuf,
    },
    /// Exhaustive verification of an instance and optional LON files.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, num_args = 0..)]
        lon: Vec<PathBuf>,
    },
    /// Full experiment: instances × algorithms → LONs, metrics, statistics.
    Pipeline {
        #[arg(long, value_enum, conflicts_with_all = ["instances", "manifest"])]
        suite: Option<Suite>,
        #[arg(long, num_args = 1.., conflicts_with = "manifest")]
        instances: Vec<PathBuf>,
        /// Rerun exactly what an earlier manifest describes.
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, default_value_t = 15)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4.27)]
        cr: f64,
        #[arg(long, default_value_t = 30)]
        count: usize,
        /// `all` or a comma-separated list of trad, px, vigp.
        #[arg(long, default_value = "all")]
        alg: String,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
}

/// Runs a parsed command. `Ok(false)` means it completed but some part
/// failed (a pipeline cell, an oracle check).
pub fn run(cli: &Cli) -> Result<bool> {
    commands::dispatch(cli)
}

/// Binary entry point: 0 on success, 1 on partial failure, 2 on error.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
