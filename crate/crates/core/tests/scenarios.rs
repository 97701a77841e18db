use std::path::{Path, PathBuf};

use edgescale::model::{Millis, Weights};
use edgescale::scenario::{parse_scenario, parse_scenario_with, ExperimentKind};
use edgescale::Error;

fn bundled(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

#[test]
fn game_scenario_has_78ms_slo() {
    let s = parse_scenario(&bundled("ipokemon-32.cfg")).unwrap();
    assert_eq!(s.server_count(), 32);
    let d = s.descriptors(1).unwrap();
    assert_eq!(d.len(), 32);
    assert!(d.iter().all(|d| d.slo_latency == Millis(78.0)));
    assert!(d.iter().all(|d| d.down_threshold == 0.8));
    assert!(d.iter().all(|d| (1..=100).contains(&d.users)));
    assert_eq!(s.node.weights, Weights::default());
    assert_eq!(s.experiment.slo_ms, vec![78.0, 82.0, 86.0]);
    assert_eq!(s.experiment.kind, ExperimentKind::ComparePolicies);
    assert!(s.experiment.seeds.len() >= 10);
}

#[test]
fn face_detection_scenario_has_2_13s_slo() {
    let s = parse_scenario(&bundled("fd-32.cfg")).unwrap();
    let d = s.descriptors(1).unwrap();
    assert_eq!(d.len(), 32);
    assert!(d.iter().all(|d| d.slo_latency == Millis::from_secs(2.13)));
    assert_eq!(s.experiment.slo_ms, vec![2130.0, 2240.0, 2340.0]);
    assert_eq!(s.node.weights, Weights::default());
}

#[test]
fn threshold_out_of_range_is_a_validation_error() {
    let text = std::fs::read_to_string(bundled("ipokemon-32.cfg")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cfg");
    std::fs::write(&path, text.replace("down_threshold = 0.8", "down_threshold = 1.5")).unwrap();
    match parse_scenario(&path).unwrap_err() {
        Error::Invalid { field, .. } => assert_eq!(field, "templates[0].down_threshold"),
        other => panic!("unexpected error {other}"),
    }
}

#[test]
fn unknown_keys_fail_strict_parse() {
    let text = std::fs::read_to_string(bundled("fd-32.cfg")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("typo.cfg");
    std::fs::write(&path, text.replace("rate_jitter", "rate_jiter")).unwrap();
    let err = parse_scenario(&path).unwrap_err().to_string();
    assert!(err.contains("templates.0.rate_jiter"), "{err}");
    let lenient = parse_scenario_with(&path, false).unwrap();
    assert_eq!(lenient.ignored_keys, vec!["templates.0.rate_jiter".to_string()]);
}

#[test]
fn missing_file_reports_path() {
    let err = parse_scenario(Path::new("/nonexistent/x.cfg")).unwrap_err();
    assert!(matches!(err, Error::Io { .. }));
    assert!(err.to_string().contains("/nonexistent/x.cfg"));
}

#[test]
fn expansion_depends_only_on_seed() {
    let s = parse_scenario(&bundled("ipokemon-32.cfg")).unwrap();
    let again = parse_scenario(&bundled("ipokemon-32.cfg")).unwrap();
    for seed in [1, 2, 99] {
        assert_eq!(s.descriptors(seed).unwrap(), again.descriptors(seed).unwrap());
    }
}
