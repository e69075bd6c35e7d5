use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use log::info;

use super::manifest::Manifest;
use super::pipeline::{
    instance_name, instance_seed, parse_algorithms, prepare_lon, run_pipeline, sample_lon, InstanceSource, PipelineConfig,
    TOOL_VERSION,
};
use super::{Cli, Command, GenProblem, SamplerArgs, Suite};
use crate::error::{invalid, LonError, Result};
use crate::layout::{export_lon, layout_lon, ExportFormat};
use crate::lon::{parse_lon, validate_against_oracle, write_lon, Lon};
use crate::metrics::{metric_vector, parse_metrics_csv, write_metrics_csv, MetricRow, METRIC_NAMES};
use crate::problems::{
    build_concatenated_traps, build_overlapping_traps, deceptive_suite, enumerate_optima, generate_max3sat,
    generate_nk, parse_instance, to_dimacs, write_instance, AdditiveProblem, OverlapLayout, OverlapVariant,
    TrapShape,
};
use crate::sampler::{Algorithm, RunConfig};
use crate::stats::{compare_metrics, correlation_matrix, write_comparison_csv, write_correlation_csv};

/// Largest instance the `oracle` command will enumerate.
const ORACLE_LIMIT: usize = 18;

pub(super) fn dispatch(cli: &Cli) -> Result<bool> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Gen {
            problem,
            n,
            k,
            m,
            overlap,
            cyclic,
            conflicting,
            cr,
            count,
            dimacs,
        } => {
            let spec = GenSpec {
                problem: *problem,
                n: *n,
                k: *k,
                m: *m,
                overlap: *overlap,
                cyclic: *cyclic,
                conflicting: *conflicting,
                cr: *cr,
                count: *count,
            };
            gen(&spec, cli.seed, out.unwrap_or(Path::new(".")), *dimacs)
        }
        Command::BuildLon { instance, alg, sampler } => {
            let problem = read_instance(instance)?;
            let cfg = run_config(*alg, sampler, cli.seed);
            let lon = sample_lon(&problem, &cfg)?;
            emit(out, &write_lon(&lon))
        }
        Command::Annotate { instance, lon } => {
            let problem = read_instance(instance)?;
            let lon = prepare_lon(&read_lon(lon)?, &problem)?;
            emit(out, &write_lon(&lon))
        }
        Command::Metrics { instance, lon, alg, name } => {
            let problem = read_instance(instance)?;
            let mut rows = Vec::new();
            for path in lon {
                let (file_name, file_alg) = lon_labels(path);
                let lon = prepare_lon(&read_lon(path)?, &problem)?;
                let metrics = metric_vector(&lon, &problem)?;
                let inst = name.clone().or(file_name).unwrap_or_else(|| instance_name(instance));
                let alg = alg.clone().or(file_alg).unwrap_or_else(|| "unknown".into());
                rows.push(MetricRow::new(&inst, &alg, &metrics));
            }
            emit(out, &write_metrics_csv(&rows))
        }
        Command::Compare { metrics, metric } => {
            let rows = parse_metrics_csv(&read(metrics)?)?;
            let selected: Vec<&str> = if metric.is_empty() {
                METRIC_NAMES.to_vec()
            } else {
                for m in metric {
                    if !METRIC_NAMES.contains(&m.as_str()) {
                        return invalid(format!("unknown metric {m:?}"));
                    }
                }
                metric.iter().map(String::as_str).collect()
            };
            emit(out, &write_comparison_csv(&compare_metrics(&rows, &selected)))
        }
        Command::Correlate { metrics, method, alg } => {
            let rows: Vec<MetricRow> = parse_metrics_csv(&read(metrics)?)?
                .into_iter()
                .filter(|r| alg.as_ref().is_none_or(|a| &r.algorithm == a))
                .collect();
            let names: Vec<String> = METRIC_NAMES.iter().map(|s| s.to_string()).collect();
            let columns: Vec<Vec<Option<f64>>> = (0..names.len())
                .map(|j| rows.iter().map(|r| r.values[j]).collect())
                .collect();
            let matrix = correlation_matrix(&names, &columns, method.parse()?)?;
            emit(out, &write_correlation_csv(&matrix))
        }
        Command::Layout { lon } => emit(out, &layout_lon(&read_lon(lon)?)?.to_tsv()),
        Command::Export { lon } => {
            let format: ExportFormat = cli.format.as_deref().unwrap_or("graphml").parse()?;
            let lon = read_lon(lon)?;
            let layout = layout_lon(&lon)?;
            emit(out, &export_lon(&lon, &layout, format)?)
        }
        Command::Oracle { instance, lon } => oracle(instance, lon, out),
        Command::Pipeline {
            suite,
            instances,
            manifest,
            n,
            k,
            cr,
            count,
            alg,
            sampler,
        } => {
            let out = out.ok_or_else(|| LonError::InvalidArgument("pipeline needs --out DIR".into()))?;
            let cfg = match manifest {
                Some(path) => PipelineConfig::from_manifest(&Manifest::parse(&read(path)?)?)?,
                None => {
                    let source = match (suite, instances.is_empty()) {
                        (Some(Suite::Deceptive), _) => InstanceSource::Deceptive,
                        (Some(Suite::Max3sat), _) => InstanceSource::Max3Sat {
                            n: *n,
                            cr: *cr,
                            count: *count,
                        },
                        (Some(Suite::Nk), _) => InstanceSource::Nk {
                            n: *n,
                            k: *k,
                            count: *count,
                        },
                        (None, false) => InstanceSource::Files(instances.clone()),
                        (None, true) => return invalid("pipeline needs --suite, --instances or --manifest"),
                    };
                    let mut cfg = PipelineConfig::new(source, cli.seed);
                    cfg.algorithms = parse_algorithms(alg)?;
                    cfg.runs = sampler.runs;
                    cfg.stagnation_cycles = sampler.stagnation;
                    cfg.perturbation_strength = sampler.perturb;
                    cfg.alpha = sampler.alpha;
                    if let Some(f) = &cli.format {
                        cfg.format = f.parse()?;
                    }
                    cfg
                }
            };
            let report = run_pipeline(&cfg, out, cli.jobs)?;
            info!("{} cells succeeded, {} failed", report.succeeded, report.failures.len());
            for (inst, alg, msg) in &report.failures {
                eprintln!("failed: {inst} {alg}: {msg}");
            }
            Ok(report.all_succeeded())
        }
    }
}

fn run_config(alg: Algorithm, s: &SamplerArgs, seed: u64) -> RunConfig {
    RunConfig {
        algorithm: alg,
        runs: s.runs,
        stagnation_cycles: s.stagnation,
        perturbation_strength: s.perturb,
        alpha: s.alpha,
        seed,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        LonError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))
    })
}

fn read_instance(path: &Path) -> Result<AdditiveProblem> {
    parse_instance(&read(path)?)
}

fn read_lon(path: &Path) -> Result<Lon> {
    parse_lon(&read(path)?)
}

/// Writes to `out`, or stdout when no path was given.
fn emit(out: Option<&Path>, text: &str) -> Result<bool> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(path, text)?;
        }
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(true)
}

/// `(instance, algorithm)` from a `<name>.<alg>.lon.tsv` file name.
fn lon_labels(path: &Path) -> (Option<String>, Option<String>) {
    let file = path.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default();
    match file.strip_suffix(".lon.tsv").and_then(|stem| stem.rsplit_once('.')) {
        Some((name, alg)) => (Some(name.to_string()), Some(alg.to_string())),
        None => (None, None),
    }
}

struct GenSpec {
    problem: GenProblem,
    n: Option<usize>,
    k: Option<usize>,
    m: Option<usize>,
    overlap: usize,
    cyclic: bool,
    conflicting: bool,
    cr: f64,
    count: usize,
}

fn need(v: Option<usize>, flag: &str) -> Result<usize> {
    v.ok_or_else(|| LonError::InvalidArgument(format!("--{flag} is required for this problem")))
}

fn generate(spec: &GenSpec, seed: u64) -> Result<Vec<(String, AdditiveProblem, Option<u64>)>> {
    let shape_of = |p| match p {
        GenProblem::Bimodal | GenProblem::BimodalOverlap => (TrapShape::Bimodal, "bimodal"),
        _ => (TrapShape::Standard, "trap"),
    };
    Ok(match spec.problem {
        GenProblem::Trap | GenProblem::Bimodal => {
            let (m, k) = (need(spec.m, "m")?, need(spec.k, "k")?);
            let (shape, tag) = shape_of(spec.problem);
            vec![(format!("{tag}_m{m}_k{k}"), build_concatenated_traps(m, k, shape)?, None)]
        }
        GenProblem::TrapOverlap | GenProblem::BimodalOverlap => {
            let (m, k) = (need(spec.m, "m")?, need(spec.k, "k")?);
            let (shape, tag) = shape_of(spec.problem);
            let layout = OverlapLayout {
                m,
                k,
                overlap: spec.overlap,
                shape,
                cyclic: spec.cyclic,
                variant: if spec.conflicting {
                    OverlapVariant::Conflicting
                } else {
                    OverlapVariant::Conforming
                },
            };
            let name = format!(
                "{tag}_{}_m{m}_k{k}_o{}{}",
                if spec.cyclic { "cyc" } else { "chain" },
                spec.overlap,
                if spec.conflicting { "_conflict" } else { "" }
            );
            vec![(name, build_overlapping_traps(&layout)?, None)]
        }
        GenProblem::Deceptive => deceptive_suite()
            .iter()
            .map(|p| Ok((p.name.to_string(), p.build()?, None)))
            .collect::<Result<_>>()?,
        GenProblem::Nk => {
            let (n, k) = (need(spec.n, "n")?, need(spec.k, "k")?);
            (0..spec.count)
                .map(|i| {
                    let s = instance_seed(seed, i);
                    Ok((format!("nk_{i:02}"), generate_nk(n, k, s)?, Some(s)))
                })
                .collect::<Result<_>>()?
        }
        GenProblem::Max3sat => {
            let n = need(spec.n, "n")?;
            (0..spec.count)
                .map(|i| {
                    let s = instance_seed(seed, i);
                    Ok((format!("max3sat_{i:02}"), generate_max3sat(n, spec.cr, s)?, Some(s)))
                })
                .collect::<Result<_>>()?
        }
    })
}

fn gen(spec: &GenSpec, seed: u64, out: &Path, dimacs: bool) -> Result<bool> {
    let instances = generate(spec, seed)?;
    fs::create_dir_all(out)?;
    let mut manifest = Manifest::new();
    manifest.set("tool", "lonlab");
    manifest.set("version", TOOL_VERSION);
    manifest.set("problem", format!("{:?}", spec.problem).to_lowercase());
    for (key, value) in [("n", spec.n), ("k", spec.k), ("m", spec.m)] {
        if let Some(v) = value {
            manifest.set(key, v);
        }
    }
    manifest.set("overlap", spec.overlap);
    manifest.set("cyclic", spec.cyclic);
    manifest.set("conflicting", spec.conflicting);
    manifest.set("cr", spec.cr);
    manifest.set("count", spec.count);
    manifest.set("seed", seed);
    for (name, problem, instance_seed) in &instances {
        let path: PathBuf = out.join(format!("{name}.kb"));
        fs::write(&path, write_instance(problem))?;
        if dimacs && spec.problem == GenProblem::Max3sat {
            fs::write(out.join(format!("{name}.cnf")), to_dimacs(problem)?)?;
        }
        if let Some(s) = instance_seed {
            manifest.set(&format!("instance.{name}.seed"), s);
        }
        info!("wrote {}", path.display());
    }
    fs::write(out.join("manifest.txt"), manifest.to_text())?;
    Ok(true)
}

fn oracle(instance: &Path, lons: &[PathBuf], out: Option<&Path>) -> Result<bool> {
    let problem = read_instance(instance)?;
    if problem.n() > ORACLE_LIMIT {
        return Err(LonError::TooLarge {
            n: problem.n(),
            limit: ORACLE_LIMIT,
        });
    }
    let optima = enumerate_optima(&problem)?;
    let mut report = format!(
        "instance {}: n={}, {} local optima, {} global optima at fitness {}\n",
        instance.display(),
        problem.n(),
        optima.local.len(),
        optima.global.len(),
        optima.global_fitness
    );
    let mut ok = true;
    for path in lons {
        report.push_str(&format!("lon {}\n", path.display()));
        for c in validate_against_oracle(&read_lon(path)?, &problem, &optima)? {
            ok &= c.passed;
            report.push_str(&format!("  {c}\n"));
        }
    }
    emit(out, &report)?;
    Ok(ok)
}
