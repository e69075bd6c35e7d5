//! End-to-end runs of the `lonlab` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lonlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lonlab"))
        .args(args)
        .output()
        .expect("spawn lonlab")
}

fn ok(args: &[&str]) -> String {
    let out = lonlab(args);
    assert!(
        out.status.success(),
        "lonlab {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_max3sat_writes_instances_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&[
        "gen", "--problem", "max3sat", "--n", "15", "--count", "3", "--dimacs", "--out", s(d),
    ]);
    let kb: Vec<_> = fs::read_dir(d)
        .unwrap()
        .filter_map(|e| e.ok())
        .filter(|e| e.path().extension().is_some_and(|x| x == "kb"))
        .collect();
    assert_eq!(kb.len(), 3);
    // round(4.27 * 15) = 64 clauses
    let cnf = fs::read_to_string(d.join("max3sat_00.cnf")).unwrap();
    assert!(cnf.lines().any(|l| l.trim() == "p cnf 15 64"), "{cnf}");
    let manifest = fs::read_to_string(d.join("manifest.txt")).unwrap();
    assert!(manifest.contains("instance.max3sat_02.seed="));
    assert!(manifest.contains("count=3"));
}

#[test]
fn gen_rejects_missing_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let out = lonlab(&["gen", "--problem", "trap", "--k", "3", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--m"));
}

#[test]
fn single_instance_workflow() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--problem", "trap", "--m", "4", "--k", "4", "--out", s(d)]);
    let inst = d.join("trap_m4_k4.kb");
    assert!(inst.exists());

    for alg in ["trad", "px", "vigp"] {
        let lon = d.join(format!("trap_m4_k4.{alg}.lon.tsv"));
        ok(&[
            "build-lon", "--instance", s(&inst), "--alg", alg, "--runs", "10", "--seed", "3", "--out",
            s(&lon),
        ]);
        let text = fs::read_to_string(&lon).unwrap();
        assert!(text.starts_with("#lon n=16"));
    }
    let trad = d.join("trap_m4_k4.trad.lon.tsv");

    let annotated = ok(&["annotate", "--instance", s(&inst), "--lon", s(&trad)]);
    assert_eq!(annotated, fs::read_to_string(&trad).unwrap());

    let lons: Vec<String> = ["trad", "px", "vigp"]
        .iter()
        .map(|a| s(&d.join(format!("trap_m4_k4.{a}.lon.tsv"))).to_string())
        .collect();
    let metrics = d.join("metrics.csv");
    let mut args = vec!["metrics", "--instance", s(&inst), "--out", s(&metrics), "--lon"];
    args.extend(lons.iter().map(String::as_str));
    ok(&args);
    let csv = fs::read_to_string(&metrics).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("instance,algorithm,mean_changed"));
    assert!(lines[1].starts_with("trap_m4_k4,trad,"));
    assert!(lines[3].starts_with("trap_m4_k4,vigp,"));

    let cmp = ok(&["compare", "--metrics", s(&metrics), "--metric", "mean_changed"]);
    let rows: Vec<&str> = cmp.lines().collect();
    assert_eq!(rows[0], "metric,alg_a,alg_b,U,p,stars,n_a,n_b");
    assert_eq!(rows.len(), 4, "{cmp}");
    assert!(rows[1..].iter().all(|r| r.starts_with("mean_changed,")));

    let corr = ok(&["correlate", "--metrics", s(&metrics), "--method", "spearman"]);
    assert!(corr.starts_with("metric,mean_changed"));
    assert_eq!(corr.lines().count(), 24);

    let layout = ok(&["layout", "--lon", s(&trad)]);
    assert!(layout.starts_with("id\tx\tfitness\n"));

    let dot = ok(&["export", "--lon", s(&trad), "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    let graphml = ok(&["export", "--lon", s(&trad), "--format", "graphml"]);
    assert!(graphml.contains("<graphml"));
    let parsed = lonlab::layout::parse_graphml(&graphml).unwrap().0;
    let original = lonlab::lon::parse_lon(&fs::read_to_string(&trad).unwrap()).unwrap();
    assert_eq!(parsed.nodes().len(), original.nodes().len());

    let report = ok(&["oracle", "--instance", s(&inst), "--lon", s(&trad)]);
    assert!(report.contains("PASS") && !report.contains("FAIL"), "{report}");
}

#[test]
fn oracle_flags_corrupted_lon() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["gen", "--problem", "trap", "--m", "3", "--k", "3", "--out", s(d)]);
    let inst = d.join("trap_m3_k3.kb");
    let lon = d.join("trap_m3_k3.trad.lon.tsv");
    ok(&["build-lon", "--instance", s(&inst), "--alg", "trad", "--out", s(&lon)]);

    // 110000000 is not a local optimum: completing the first block improves it
    let text = fs::read_to_string(&lon).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let row = lines.iter().position(|l| l == "id\tbits\tfitness\tis_global").unwrap() + 1;
    let cols: Vec<&str> = lines[row].split('\t').collect();
    lines[row] = format!("{}\t110000000\t{}\t{}", cols[0], cols[2], cols[3]);
    fs::write(&lon, lines.join("\n") + "\n").unwrap();

    let out = lonlab(&["oracle", "--instance", s(&inst), "--lon", s(&lon)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn pipeline_builds_three_lons_per_instance() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = d.join("run");
    ok(&[
        "pipeline", "--suite", "nk", "--n", "12", "--k", "2", "--count", "2", "--alg", "all", "--runs",
        "5", "--out", s(&out),
    ]);
    let lons: Vec<_> = fs::read_dir(out.join("lons")).unwrap().collect();
    assert_eq!(lons.len(), 6);
    for name in ["nk_00", "nk_01"] {
        for alg in ["trad", "px", "vigp"] {
            assert!(out.join("lons").join(format!("{name}.{alg}.lon.tsv")).exists());
        }
    }
    let metrics = fs::read_to_string(out.join("metrics.csv")).unwrap();
    assert_eq!(metrics.lines().count(), 7);
    for f in ["manifest.txt", "comparisons.csv", "correlations_kendall.csv", "correlations_spearman.csv"] {
        assert!(out.join(f).exists(), "{f}");
    }
}

#[test]
fn pipeline_without_source_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = lonlab(&["pipeline", "--out", s(dir.path())]);
    assert_eq!(out.status.code(), Some(2));
}
