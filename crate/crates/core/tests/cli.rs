use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use larmor_clock::scenario::{run_point, ScenarioConfig, CSV_HEADER};

fn larmor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_larmor"))
        .args(args)
        .env("LARMOR_THREADS", "2")
        .output()
        .expect("spawn larmor")
}

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join(name)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_prints_record() {
    let out = larmor(&["run", path_str(&config("rectangular.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let tau_t = v["results"]["tau_T"].as_f64().unwrap();
    assert!((tau_t - 0.6938).abs() < 5e-5);
    let (l, d) = (
        v["results"]["tau_L"].as_f64().unwrap(),
        v["results"]["tau_D"].as_f64().unwrap(),
    );
    assert!((l - d).abs() < 1e-6 * d);
    assert_eq!(v["results"]["converged"], true);
}

#[test]
fn free_flight_row() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("free.csv");
    let out = larmor(&[
        "run",
        path_str(&config("free.json")),
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| {
        let i = CSV_HEADER.split(',').position(|h| h == name).unwrap();
        row[i].parse::<f64>().unwrap()
    };
    let expected = 2.0 * 2f64.sqrt();
    assert!((col("tau_T") - expected).abs() < 1e-8);
    assert!((col("tau_D") - expected).abs() < 1e-12);
    assert!(col("tau_R").is_nan());
}

#[test]
fn below_rest_mass_is_a_config_error() {
    let out = larmor(&["run", path_str(&config("below-rest-mass.json"))]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("particle.E"));
}

#[test]
fn malformed_and_missing_configs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"particle": {"E": 1.2}}"#).unwrap();
    assert_eq!(larmor(&["run", path_str(&bad)]).status.code(), Some(2));
    assert_eq!(larmor(&["run", "/nonexistent.json"]).status.code(), Some(2));
    let rect = config("rectangular.json");
    let out = larmor(&[
        "sweep",
        path_str(&rect),
        "--axis",
        "E",
        "--start",
        "2",
        "--stop",
        "1",
        "--count",
        "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solver_error_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("threshold.json");
    // E - m equals the barrier height: zero momentum inside.
    std::fs::write(
        &path,
        r#"{"particle": {"E": 1.5}, "field": {"V": 0.0},
            "barrier": {"kind": "rectangular", "U0": 0.5, "d": 1.0}}"#,
    )
    .unwrap();
    assert_eq!(larmor(&["run", path_str(&path)]).status.code(), Some(3));
}

#[test]
fn sweep_is_deterministic() {
    let rect = config("rectangular.json");
    let args = [
        "sweep",
        path_str(&rect),
        "--axis",
        "d",
        "--start",
        "0.1",
        "--stop",
        "5",
        "--count",
        "50",
        "--log",
    ];
    let a = larmor(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_larmor"))
        .args(args)
        .env("LARMOR_THREADS", "7")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 51);
    let last: Vec<&str> = text.lines().last().unwrap().split(',').collect();
    let tau_t: f64 = last[13].parse().unwrap();
    assert!((tau_t - 0.690963).abs() < 1e-6);
}

#[test]
fn record_roundtrip() {
    for name in ["rectangular.json", "two-step.json", "gaussian.json"] {
        let out = larmor(&["run", path_str(&config(name))]);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let replayed = run_point(&ScenarioConfig::from_json(&text).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for (key, value) in v["results"].as_object().unwrap() {
            let mine = serde_json::to_value(&replayed.results).unwrap()[key].clone();
            match (value.as_f64(), mine.as_f64()) {
                (Some(x), Some(y)) => assert!((x - y).abs() < 1e-12, "{name}: {key}"),
                _ => assert_eq!(value, &mine, "{name}: {key}"),
            }
        }
    }
}

#[test]
fn validate_negative_control() {
    let out = larmor(&["validate", "--json", "--tolerance", "1e-20"]);
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
    let failing: Vec<_> = v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap().iter())
        .filter(|c| c["passed"] == false)
        .collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|c| c["name"].is_string()));
}

#[test]
fn validate_passes() {
    let out = larmor(&["validate"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}

#[test]
fn si_display() {
    let out = larmor(&[
        "run",
        path_str(&config("rectangular.json")),
        "--si",
        "939.565",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("tau_T_s"));
    assert_eq!(
        larmor(&["run", path_str(&config("rectangular.json")), "--si", "-1"])
            .status
            .code(),
        Some(2)
    );
}
