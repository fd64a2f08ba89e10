//! End-to-end checks of the command-line surface: JSON outputs, CSV
//! emission, and the exit-code contract of the verify subcommands.

use std::path::PathBuf;
use std::process::{Command, Output};

use reset_ruin::harness::output::parse_series_csv;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reset-ruin"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(output.status.success(), "stderr: {}", String::from_utf8_lossy(&output.stderr));
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("reset-ruin-cli-{tag}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    dir
}

#[test]
fn solve_reports_coupling_and_ruin() {
    let out = run(&[
        "solve", "--a", "10", "--p", "0.6", "--gamma", "0.5", "--sites", "3,7", "--weights",
        "0.3076923076923077,0.6923076923076923", "--z", "5",
    ]);
    let doc = stdout_json(&out);
    assert!((doc["C"].as_f64().unwrap() - 0.1163636364).abs() < 1e-9);
    assert!((doc["q_z"].as_f64().unwrap() - 0.1163636364).abs() < 1e-9);
    assert!(doc["u_bar"].as_f64().unwrap() > 0.0);
    assert!(doc["s_bar"].as_f64().unwrap() > doc["u_bar"].as_f64().unwrap());
}

#[test]
fn solve_without_z_omits_ruin() {
    let out = run(&[
        "solve", "--a", "10", "--p", "0.6", "--gamma", "0.5", "--sites", "3,7", "--weights",
        "0.5,0.5",
    ]);
    let doc = stdout_json(&out);
    assert!(doc.get("q_z").is_none());
}

#[test]
fn critical_emits_family() {
    let out = run(&["critical", "--a", "10", "--p", "0.6", "--sites", "3,7"]);
    let doc = stdout_json(&out);
    assert!((doc["pi_star"]["3"].as_f64().unwrap() - 4.0 / 13.0).abs() < 1e-12);
    assert!((doc["pi_star"]["7"].as_f64().unwrap() - 9.0 / 13.0).abs() < 1e-12);
    assert!((doc["C_star"].as_f64().unwrap() - 0.1163636364).abs() < 1e-9);
    assert_eq!(doc["pairs"][0][0], 3);
    assert_eq!(doc["pairs"][0][1], 7);
    assert!(doc["neutral_site"].is_null());
}

#[test]
fn critical_with_neutral_weight() {
    let out = run(&[
        "critical", "--a", "10", "--p", "0.7", "--sites", "3,5,7", "--neutral-weight", "0.3",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["neutral_site"], 5);
    assert!((doc["pi_star"]["5"].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert!((doc["pi_star"]["3"].as_f64().unwrap() - 0.7 * 9.0 / 58.0).abs() < 1e-12);
}

#[test]
fn critical_rejects_asymmetric_sites() {
    let out = run(&["critical", "--a", "10", "--p", "0.6", "--sites", "3,6"]);
    assert!(!out.status.success());
}

#[test]
fn mc_estimate_shape() {
    let out = run(&[
        "mc", "--a", "10", "--p", "0.6", "--gamma", "0.5", "--sites", "3,7", "--weights",
        "0.5,0.5", "--n", "2000", "--seed", "7",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["n"], 2000);
    assert_eq!(doc["seed"], 7);
    let c_hat = doc["c_hat"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&c_hat));
    assert!(doc["q_hat"]["3"].as_f64().is_some());
    assert!(doc["q_hat"]["7"].as_f64().is_some());
    assert!(doc["stderr"].as_f64().unwrap() > 0.0);
}

#[test]
fn sweep_gamma_writes_series() {
    let dir = temp_dir("sweep");
    let out = run(&[
        "sweep-gamma", "--a", "10", "--p", "0.6", "--sites", "3,7", "--pi1", "0.1,0.65",
        "--gamma-grid", "0.1:0.2:0.9", "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let points = parse_series_csv(&dir.join("pi1_0.1.csv")).unwrap();
    assert_eq!(points.len(), 5);
    assert!((points[0].0 - 0.1).abs() < 1e-12);
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("pi1_0.1.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["kind"], "C_vs_gamma");
    assert_eq!(sidecar["parameters"]["a"], 10);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn profile_writes_classical_proxy() {
    let dir = temp_dir("profile");
    let out = run(&[
        "profile", "--a", "10", "--p", "0.6", "--sites", "3,7", "--weights",
        "0.3076923076923077,0.6923076923076923", "--gammas", "0,0.4", "--out",
        dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let points = parse_series_csv(&dir.join("gamma_0.csv")).unwrap();
    assert_eq!(points.len(), 9);
    // First interior site of the classical profile.
    assert!((points[0].1 - 0.6608).abs() < 5e-5);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn universality_collapses_pairs() {
    let dir = temp_dir("universality");
    let out = run(&[
        "universality", "--a", "10", "--p-grid", "0.4:0.05:0.6", "--pairs", "1,9;4,6",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let one = parse_series_csv(&dir.join("pair_1_9.csv")).unwrap();
    let two = parse_series_csv(&dir.join("pair_4_6.csv")).unwrap();
    for (a, b) in one.iter().zip(&two) {
        assert!((a.1 - b.1).abs() <= 1e-12);
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_table1_passes_and_prints_rows() {
    let out = run(&["verify", "table1"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass"));
    assert!(text.contains("degenerate"));
    // The JSON document follows the human-readable table on its own line.
    let json_start = text.find("\n[\n").unwrap() + 1;
    let rows: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 8);
}

#[test]
fn verify_table1_derivative_objective() {
    let out = run(&["verify", "table1", "--objective", "derivative"]);
    assert!(out.status.success());
}

#[test]
fn verify_table2_small_run() {
    let out = run(&["verify", "table2", "--n", "5000", "--seed", "42"]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("chi-square"));
    let json_start = text.find("\n{\n").unwrap() + 1;
    let report: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 9);
    assert_eq!(report["n"], 5000);
}

#[test]
fn bad_parameters_fail_with_nonzero_exit() {
    let out = run(&[
        "solve", "--a", "1", "--p", "0.6", "--gamma", "0.5", "--sites", "3", "--weights", "1",
    ]);
    assert!(!out.status.success());
    let out = run(&[
        "solve", "--a", "10", "--p", "1.5", "--gamma", "0.5", "--sites", "3", "--weights", "1",
    ]);
    assert!(!out.status.success());
    let out = run(&["verify", "table1", "--objective", "nonsense"]);
    assert!(!out.status.success());
}
