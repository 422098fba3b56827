use std::path::Path;
use std::process::{Command, Output};

fn pa_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pa-lab"))
        .args(args)
        .env_remove("PA_LAB_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn ok(out: Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_then_betti_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    ok(pa_lab(&["generate", "-T", "120", "-m", "7", "-d", "-5", "-s", "3", "-o", path(&graph)]));
    assert!(std::fs::read_to_string(&graph).unwrap().starts_with("pa-graph v1"));

    let v: serde_json::Value = serde_json::from_str(&ok(pa_lab(&["betti", path(&graph), "--top", "2"]))).unwrap();
    assert_eq!(v["betti"][0], 1);
    assert_eq!(v["nodes"], 120);

    let csv = ok(pa_lab(&["trace", path(&graph), "-q", "2"]));
    assert_eq!(csv.lines().count(), 121);
    assert!(csv.starts_with("t,u,bKL,ell,bIK,ell_hat,bIK_hat,lower,upper,betti_checkpoint"));
}

#[test]
fn predict_is_exact() {
    let v: serde_json::Value =
        serde_json::from_str(&ok(pa_lab(&["predict", "-q", "2", "-d", "-5", "-m", "7"]))).unwrap();
    assert_eq!(v["regime"], "power-law");
    assert!((v["exponent"].as_f64().unwrap() - 1.0 / 9.0).abs() < 1e-12);
    let v: serde_json::Value =
        serde_json::from_str(&ok(pa_lab(&["predict", "-q", "2", "-d", "-14/3", "-m", "7"]))).unwrap();
    assert_eq!(v["regime"], "logarithmic");
    assert!(!pa_lab(&["predict", "-q", "2", "-d", "abc", "-m", "7"]).status.success());
}

#[test]
fn ensemble_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("cfg.json");
    std::fs::write(&config, r#"{"nodes": 150, "replicates": 3, "mode": "hatted"}"#).unwrap();
    let runs = dir.path().join("runs");
    ok(pa_lab(&["ensemble", "-c", path(&config), "-R", "4", "-o", path(&runs)]));
    for i in 0..4 {
        assert!(runs.join(format!("replicate_{i:04}.csv")).exists());
    }
    let summary = runs.join("summary.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(v["config"]["replicates"], 4);
    assert_eq!(v["config"]["nodes"], 150);

    let plots = dir.path().join("plots");
    ok(pa_lab(&["report", path(&summary), "-o", path(&plots), "--svg"]));
    for f in ["loglog.csv", "band.json", "curves.svg"] {
        assert!(plots.join(f).exists(), "{f}");
    }
}

#[test]
fn output_dir_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let elsewhere = dir.path().join("flag");
    let out = Command::new(env!("CARGO_BIN_EXE_pa-lab"))
        .args(["ensemble", "-T", "80", "-R", "2", "--mode", "hatted", "-o", path(&elsewhere)])
        .env("PA_LAB_OUTPUT_DIR", dir.path().join("env"))
        .output()
        .unwrap();
    ok(out);
    assert!(dir.path().join("env/summary.json").exists());
    assert!(!elsewhere.exists());
}

#[test]
fn census_builtin_and_file() {
    let v: serde_json::Value = serde_json::from_str(&ok(pa_lab(&[
        "census", "--builtin", "biangle", "-m", "3", "-d", "-1", "-R", "2", "--sizes", "50,100,200",
    ])))
    .unwrap();
    assert_eq!(v["pattern"], "biangle");
    assert_eq!(v["counts"].as_array().unwrap().len(), 3);

    let dir = tempfile::tempdir().unwrap();
    let pattern = dir.path().join("tri.txt");
    std::fs::write(&pattern, "pattern v=3\n2 1 1\n3 1 1\n3 2 1\n").unwrap();
    let v: serde_json::Value = serde_json::from_str(&ok(pa_lab(&[
        "census", "-p", path(&pattern), "-m", "3", "-d", "-1", "-R", "2", "--sizes", "50,100,200",
    ])))
    .unwrap();
    assert!(v["counts"][2][1].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_input_fails_cleanly() {
    assert!(!pa_lab(&["generate", "-T", "10", "-m", "2", "-d", "-3"]).status.success());
    assert!(!pa_lab(&["betti", "/nonexistent/graph"]).status.success());
}
