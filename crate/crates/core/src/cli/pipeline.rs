//! The batch experiment: instances × algorithms → LONs, metrics, statistics
//! and layouts, all derived from one root seed.

use std::fs;
use std::path::{Path, PathBuf};

use log::{error, info, warn};
use rayon::prelude::*;

use super::manifest::Manifest;
use crate::error::{invalid, LonError, Result};
use crate::graybox::vig_from_walsh;
use crate::layout::{export_lon, layout_lon, ExportFormat};
use crate::lon::{write_lon, Lon};
use crate::metrics::{metric_vector, write_metrics_csv, MetricRow, MetricVector, METRIC_NAMES};
use crate::problems::{
    deceptive_suite, generate_max3sat, generate_nk, global_fitness, parse_instance, write_instance,
    AdditiveProblem,
};
use crate::rng::derive_seed;
use crate::sampler::{build_lon, sample_runs, Algorithm, RunConfig};
use crate::stats::{
    compare_metrics, correlation_matrix, write_comparison_csv, write_correlation_csv, CorrelationMethod,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a pipeline's instances come from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    Deceptive,
    Max3Sat { n: usize, cr: f64, count: usize },
    Nk { n: usize, k: usize, count: usize },
    Files(Vec<PathBuf>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub source: InstanceSource,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub stagnation_cycles: usize,
    pub perturbation_strength: usize,
    pub alpha: Option<usize>,
    pub seed: u64,
    pub format: ExportFormat,
}

impl PipelineConfig {
    pub fn new(source: InstanceSource, seed: u64) -> Self {
        let defaults = RunConfig::new(Algorithm::Trad, seed);
        PipelineConfig {
            source,
            algorithms: Algorithm::ALL.to_vec(),
            runs: defaults.runs,
            stagnation_cycles: defaults.stagnation_cycles,
            perturbation_strength: defaults.perturbation_strength,
            alpha: defaults.alpha,
            seed,
            format: ExportFormat::GraphMl,
        }
    }

    /// Sampler configuration of one cell.
    pub fn run_config(&self, instance_index: usize, algorithm: Algorithm) -> RunConfig {
        RunConfig {
            algorithm,
            runs: self.runs,
            stagnation_cycles: self.stagnation_cycles,
            perturbation_strength: self.perturbation_strength,
            alpha: self.alpha,
            seed: cell_seed(self.seed, instance_index, algorithm),
        }
    }

    pub fn load_instances(&self) -> Result<Vec<NamedInstance>> {
        let instances = match &self.source {
            InstanceSource::Deceptive => deceptive_suite()
                .iter()
                .map(|p| Ok(NamedInstance::new(p.name, p.build()?)))
                .collect::<Result<Vec<_>>>()?,
            InstanceSource::Max3Sat { n, cr, count } => (0..*count)
                .map(|i| {
                    let p = generate_max3sat(*n, *cr, instance_seed(self.seed, i))?;
                    Ok(NamedInstance::new(format!("max3sat_{i:02}"), p))
                })
                .collect::<Result<Vec<_>>>()?,
            InstanceSource::Nk { n, k, count } => (0..*count)
                .map(|i| {
                    let p = generate_nk(*n, *k, instance_seed(self.seed, i))?;
                    Ok(NamedInstance::new(format!("nk_{i:02}"), p))
                })
                .collect::<Result<Vec<_>>>()?,
            InstanceSource::Files(paths) => paths
                .iter()
                .map(|path| {
                    let problem = parse_instance(&fs::read_to_string(path)?)?;
                    Ok(NamedInstance::new(instance_name(path), problem))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        for (i, a) in instances.iter().enumerate() {
            if instances[..i].iter().any(|b| b.name == a.name) {
                return invalid(format!("duplicate instance name {:?}", a.name));
            }
        }
        Ok(instances)
    }

    /// Everything needed to reproduce the run. Cell seeds are listed for
    /// reference and ignored when the manifest is read back.
    pub fn to_manifest(&self, instance_names: &[String]) -> Manifest {
        let mut m = Manifest::new();
        m.set("tool", "lonlab");
        m.set("version", TOOL_VERSION);
        match &self.source {
            InstanceSource::Deceptive => m.set("suite", "deceptive"),
            InstanceSource::Max3Sat { n, cr, count } => {
                m.set("suite", "max3sat");
                m.set("n", n);
                m.set("cr", cr);
                m.set("count", count);
            }
            InstanceSource::Nk { n, k, count } => {
                m.set("suite", "nk");
                m.set("n", n);
                m.set("k", k);
                m.set("count", count);
            }
            InstanceSource::Files(paths) => {
                m.set("suite", "files");
                let list: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
                m.set("instances", list.join(","));
            }
        }
        let algs: Vec<&str> = self.algorithms.iter().map(|a| a.tag()).collect();
        m.set("algorithms", algs.join(","));
        m.set("runs", self.runs);
        m.set("stagnation", self.stagnation_cycles);
        m.set("perturb", self.perturbation_strength);
        m.set("alpha", self.alpha.map(|a| a.to_string()).unwrap_or_else(|| "max_arity".into()));
        m.set("seed", self.seed);
        m.set("format", self.format.extension());
        for (i, name) in instance_names.iter().enumerate() {
            for &alg in &self.algorithms {
                m.set(&format!("cell.{name}.{alg}.seed"), cell_seed(self.seed, i, alg));
            }
        }
        m
    }

    pub fn from_manifest(m: &Manifest) -> Result<PipelineConfig> {
        let source = match m.require("suite")? {
            "deceptive" => InstanceSource::Deceptive,
            "max3sat" => InstanceSource::Max3Sat {
                n: m.parse_value("n")?,
                cr: m.parse_value("cr")?,
                count: m.parse_value("count")?,
            },
            "nk" => InstanceSource::Nk {
                n: m.parse_value("n")?,
                k: m.parse_value("k")?,
                count: m.parse_value("count")?,
            },
            "files" => InstanceSource::Files(
                m.require("instances")?
                    .split(',')
                    .filter(|s| !s.is_empty())
                    .map(PathBuf::from)
                    .collect(),
            ),
            other => return invalid(format!("unknown suite {other:?} in manifest")),
        };
        let alpha = match m.require("alpha")? {
            "max_arity" => None,
            _ => Some(m.parse_value("alpha")?),
        };
        Ok(PipelineConfig {
            source,
            algorithms: parse_algorithms(m.require("algorithms")?)?,
            runs: m.parse_value("runs")?,
            stagnation_cycles: m.parse_value("stagnation")?,
            perturbation_strength: m.parse_value("perturb")?,
            alpha,
            seed: m.parse_value("seed")?,
            format: m.parse_value("format")?,
        })
    }
}

/// `all` or a comma-separated list of algorithm tags.
pub fn parse_algorithms(text: &str) -> Result<Vec<Algorithm>> {
    if text == "all" {
        return Ok(Algorithm::ALL.to_vec());
    }
    let mut algs = Vec::new();
    for part in text.split(',') {
        let a: Algorithm = part.trim().parse()?;
        if !algs.contains(&a) {
            algs.push(a);
        }
    }
    if algs.is_empty() {
        return invalid("no algorithms selected");
    }
    Ok(algs)
}

/// Seed of generated instance `i`.
pub fn instance_seed(root: u64, i: usize) -> u64 {
    derive_seed(derive_seed(root, 0), i as u64)
}

/// Sampler seed of one (instance, algorithm) cell; independent of which
/// other cells run.
pub fn cell_seed(root: u64, instance_index: usize, algorithm: Algorithm) -> u64 {
    let alg_index = Algorithm::ALL.iter().position(|&a| a == algorithm).unwrap_or(0);
    derive_seed(derive_seed(derive_seed(root, 1), instance_index as u64), alg_index as u64)
}

pub fn instance_name(path: &Path) -> String {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    file.strip_suffix(".kb")
        .or_else(|| file.strip_suffix(".cnf"))
        .unwrap_or(&file)
        .to_string()
}

#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub name: String,
    pub problem: AdditiveProblem,
}

impl NamedInstance {
    pub fn new(name: impl Into<String>, problem: AdditiveProblem) -> Self {
        NamedInstance {
            name: name.into(),
            problem,
        }
    }
}

/// Re-annotates a LON against its problem and sets global flags from the
/// known or enumerated optimum, falling back to the best sampled fitness.
pub fn prepare_lon(lon: &Lon, problem: &AdditiveProblem) -> Result<Lon> {
    let mut lon = lon.annotate_edges(problem)?;
    let global = match global_fitness(problem) {
        Some(g) => g,
        None => {
            warn!("global optimum unknown for n={}; using best sampled fitness", problem.n());
            lon.nodes().iter().map(|v| v.fitness).fold(f64::NEG_INFINITY, f64::max)
        }
    };
    lon.mark_global(global);
    Ok(lon)
}

/// Samples a prepared LON. PX uses the exact non-linear interaction graph.
pub fn sample_lon(problem: &AdditiveProblem, config: &RunConfig) -> Result<Lon> {
    let vig = (config.algorithm == Algorithm::Px)
        .then(|| vig_from_walsh(problem))
        .transpose()?;
    let traces = sample_runs(problem, config, vig.as_ref())?;
    prepare_lon(&build_lon(&traces)?, problem)
}

/// Samples one cell and returns its prepared LON and metrics.
pub fn analyse_cell(problem: &AdditiveProblem, config: &RunConfig) -> Result<(Lon, MetricVector)> {
    let lon = sample_lon(problem, config)?;
    let metrics = metric_vector(&lon, problem)?;
    Ok((lon, metrics))
}

#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub instance: String,
    pub algorithm: Algorithm,
    pub result: std::result::Result<(Lon, MetricVector), String>,
}

#[derive(Debug, Clone, Default)]
pub struct PipelineReport {
    pub succeeded: usize,
    /// `(instance, algorithm, message)` of each failed cell.
    pub failures: Vec<(String, String, String)>,
    pub rows: Vec<MetricRow>,
}

impl PipelineReport {
    pub fn all_succeeded(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every cell on a pool of `jobs` threads (0 = rayon's default).
/// Results are gathered in (instance, algorithm) order, so thread count
/// never changes the output.
pub fn run_cells(cfg: &PipelineConfig, instances: &[NamedInstance], jobs: usize) -> Result<Vec<CellOutcome>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| LonError::InvalidArgument(format!("thread pool: {e}")))?;
    let cells: Vec<(usize, Algorithm)> = (0..instances.len())
        .flat_map(|i| cfg.algorithms.iter().map(move |&a| (i, a)))
        .collect();
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|&(i, alg)| {
                let inst = &instances[i];
                let result = analyse_cell(&inst.problem, &cfg.run_config(i, alg)).map_err(|e| e.to_string());
                match &result {
                    Ok((lon, _)) => info!("{} {}: {} optima, {} edges", inst.name, alg, lon.nodes().len(), lon.edges().len()),
                    Err(e) => error!("{} {} failed: {e}", inst.name, alg),
                }
                CellOutcome {
                    instance: inst.name.clone(),
                    algorithm: alg,
                    result,
                }
            })
            .collect()
    }))
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text)?;
    Ok(())
}

/// Runs the whole experiment and writes every artifact under `out`.
pub fn run_pipeline(cfg: &PipelineConfig, out: &Path, jobs: usize) -> Result<PipelineReport> {
    if cfg.runs == 0 || cfg.stagnation_cycles == 0 || cfg.perturbation_strength == 0 {
        return invalid("runs, stagnation and perturb must all be >= 1");
    }
    let instances = cfg.load_instances()?;
    let names: Vec<String> = instances.iter().map(|i| i.name.clone()).collect();
    fs::create_dir_all(out)?;
    write(&out.join("manifest.txt"), &cfg.to_manifest(&names).to_text())?;
    for inst in &instances {
        write(&out.join("instances").join(format!("{}.kb", inst.name)), &write_instance(&inst.problem))?;
    }

    let outcomes = run_cells(cfg, &instances, jobs)?;
    let mut report = PipelineReport::default();
    for cell in &outcomes {
        let stem = format!("{}.{}", cell.instance, cell.algorithm);
        let written = cell.result.as_ref().map_err(Clone::clone).and_then(|(lon, metrics)| {
            let layout = layout_lon(lon).map_err(|e| e.to_string())?;
            write(&out.join("lons").join(format!("{stem}.lon.tsv")), &write_lon(lon)).map_err(|e| e.to_string())?;
            write(&out.join("layouts").join(format!("{stem}.layout.tsv")), &layout.to_tsv()).map_err(|e| e.to_string())?;
            if cfg.format != ExportFormat::Tsv {
                let text = export_lon(lon, &layout, cfg.format).map_err(|e| e.to_string())?;
                write(&out.join("graphs").join(format!("{stem}.{}", cfg.format.extension())), &text)
                    .map_err(|e| e.to_string())?;
            }
            Ok(MetricRow::new(&cell.instance, cell.algorithm.tag(), metrics))
        });
        match written {
            Ok(row) => {
                report.succeeded += 1;
                report.rows.push(row);
            }
            Err(msg) => {
                error!("{stem}: {msg}");
                report
                    .failures
                    .push((cell.instance.clone(), cell.algorithm.tag().to_string(), msg));
            }
        }
    }

    write(&out.join("metrics.csv"), &write_metrics_csv(&report.rows))?;
    write(
        &out.join("comparisons.csv"),
        &write_comparison_csv(&compare_metrics(&report.rows, &METRIC_NAMES)),
    )?;
    let names: Vec<String> = METRIC_NAMES.iter().map(|s| s.to_string()).collect();
    let columns: Vec<Vec<Option<f64>>> = (0..METRIC_NAMES.len())
        .map(|j| report.rows.iter().map(|r| r.values[j]).collect())
        .collect();
    for (method, tag) in [(CorrelationMethod::Kendall, "kendall"), (CorrelationMethod::Spearman, "spearman")] {
        let m = correlation_matrix(&names, &columns, method)?;
        write(&out.join(format!("correlations_{tag}.csv")), &write_correlation_csv(&m))?;
    }
    Ok(report)
}
