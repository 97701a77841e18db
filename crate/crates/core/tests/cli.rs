use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use edgescale::report::read_trace;
use edgescale::PriorityPolicy;

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn edgescale(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgescale")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_is_deterministic_for_fixed_seed() {
    let scenario = bundled("ipokemon-32.cfg");
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = edgescale(&[
            "run",
            "--scenario",
            path_str(&scenario),
            "--rounds",
            "20",
            "--seed",
            "7",
            "--output",
            path_str(dir.path()),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(String::from_utf8_lossy(&out.stdout).contains("mean vr_e"));
    }
    for f in ["trace-sdps-seed7.jsonl", "summary.csv"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs");
    }
    assert_eq!(read_trace(&a.path().join("trace-sdps-seed7.jsonl")).unwrap().len(), 20);
}

#[test]
fn policy_flag_overrides_scenario() {
    let dir = tempfile::tempdir().unwrap();
    let out = edgescale(&[
        "run",
        "--scenario",
        path_str(&bundled("fd-32.cfg")),
        "--policy",
        "spm",
        "--rounds",
        "3",
        "--seed",
        "1",
        "--output",
        path_str(dir.path()),
        "--format",
        "trace",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = read_trace(&dir.path().join("trace-spm-seed1.jsonl")).unwrap();
    assert!(records.iter().all(|r| r.policy == PriorityPolicy::Spm));
    assert!(!dir.path().join("summary.csv").exists());
}

#[test]
fn unwritable_output_fails() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let target = blocker.join("sub");
    let out = edgescale(&[
        "run",
        "--scenario",
        path_str(&bundled("ipokemon-32.cfg")),
        "--rounds",
        "2",
        "--seed",
        "1",
        "--output",
        path_str(&target),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn compare_emits_five_rows_per_cell() {
    let dir = tempfile::tempdir().unwrap();
    let out = edgescale(&[
        "compare",
        "--scenario",
        path_str(&bundled("ipokemon-32.cfg")),
        "--seeds",
        "1,2",
        "--rounds",
        "4",
        "--output",
        path_str(dir.path()),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("compare.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    // Three SLOs, one server count.
    assert_eq!(rows.len(), 15);
    for slo in ["78", "82", "86"] {
        assert_eq!(rows.iter().filter(|r| r.starts_with(&format!("{slo},32,"))).count(), 5);
    }
    let traces = std::fs::read_dir(dir.path())
        .unwrap()
        .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().starts_with("trace-"))
        .count();
    assert_eq!(traces, 3 * 5 * 2);
}

#[test]
fn unknown_keys_warn_unless_strict() {
    let text = std::fs::read_to_string(bundled("ipokemon-32.cfg")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extra.cfg");
    std::fs::write(&path, text.replace("[node]\n", "[node]\nflavour = \"x\"\n")).unwrap();
    let args = ["run", "--scenario", path_str(&path), "--rounds", "1", "--seed", "1"];
    let out = edgescale(&args);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("node.flavour"));
    let mut strict = args.to_vec();
    strict.push("--strict");
    let out = edgescale(&strict);
    assert!(!out.status.success());
}

#[test]
fn sweeps_run() {
    let scenario = bundled("ipokemon-32.cfg");
    let out = edgescale(&["sweep", "weights", "--scenario", path_str(&scenario)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 1 + 11 * 11);
    let out = edgescale(&["sweep", "servers", "--scenario", path_str(&scenario), "--seed", "1", "--rounds", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 15);
}

#[test]
fn bad_arguments_fail() {
    assert!(!edgescale(&["run", "--scenario", "/nonexistent.cfg"]).status.success());
    let scenario = bundled("ipokemon-32.cfg");
    assert!(!edgescale(&["run", "--scenario", path_str(&scenario), "--policy", "fastest"]).status.success());
    assert!(!edgescale(&["run", "--scenario", path_str(&scenario), "--format", "xml"]).status.success());
}
