use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn knotbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn trefoil(dir: &Path) -> std::path::PathBuf {
    let path = dir.join("trefoil.json");
    let out = knotbound(&[
        "generate", "--family", "torus_knot", "--p", "2", "--q", "3",
        "--major-radius", "3", "--minor-radius", "1", "--samples", "256",
        "-o", path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn generate_then_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let curve = trefoil(dir.path());
    let report = dir.path().join("inv.json");
    let out = knotbound(&["invariants", curve.to_str().unwrap(), "-o", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&report);
    let kappa = v["total_curvature"].as_f64().unwrap();
    assert!(kappa > 4.0 * std::f64::consts::PI);
    assert!(v["acn"].as_f64().unwrap() > 3.0);
    assert!(v["error_estimates"]["acn"].as_f64().unwrap() >= 0.0);
}

#[test]
fn generate_writes_stdout_without_output_flag() {
    let out = knotbound(&["generate", "--family", "circle", "--samples", "16"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.is_object());
}

#[test]
fn generate_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    std::fs::write(&spec, r#"{"family": "spiral", "theta_max": 20, "samples": 400}"#).unwrap();
    let out = knotbound(&["generate", "--spec", spec.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_main_theorem_passes_and_csv_has_header() {
    let dir = tempfile::tempdir().unwrap();
    let curve = trefoil(dir.path());
    let out = knotbound(&["verify", "--which", "main_theorem", "--csv", curve.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("name,lhs,rhs,margin,pass"));
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")), "{text}");
}

#[test]
fn verify_illumination_json() {
    let dir = tempfile::tempdir().unwrap();
    let curve = trefoil(dir.path());
    let out = knotbound(&[
        "verify", "--which", "illumination", "--basepoint", "0,0,10", curve.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["name"], "illumination");
    assert_eq!(v[0]["pass"], true);
}

#[test]
fn basepoint_too_close_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let curve = trefoil(dir.path());
    let out = knotbound(&[
        "verify", "--which", "illumination", "--basepoint", "3,0,0", curve.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_file_and_bad_usage_exit_two() {
    assert_eq!(knotbound(&["invariants", "/nonexistent/curve.json"]).status.code(), Some(2));
    assert_eq!(knotbound(&["verify", "--which", "nonsense", "x.json"]).status.code(), Some(2));
    assert_eq!(knotbound(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn oracle_reports_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let curve = trefoil(dir.path());
    let out = knotbound(&["oracle", "--directions", "50", curve.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["min_observed"].as_u64().unwrap() >= 3);
    assert_eq!(v["directions"], 50);
}

#[test]
fn sweep_writes_csv_and_flags_failed_rows() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    let csv = dir.path().join("out.csv");
    std::fs::write(
        &plan,
        r#"{"family": {"family": "circle", "radius": 1.0, "samples": 64},
            "varying": {"name": "radius", "values": [2.0, 1.0]},
            "outputs": ["invariants", "packing"]}"#,
    )
    .unwrap();
    let out = knotbound(&["sweep", plan.to_str().unwrap(), "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rdr.headers().unwrap().len(), 25);
    let values: Vec<String> = rdr.records().map(|r| r.unwrap()[2].to_string()).collect();
    assert_eq!(values, ["1.0", "2.0"]);

    // a tube wider than the core radius self-intersects: recorded, exit 1
    std::fs::write(
        &plan,
        r#"{"family": {"family": "torus_knot", "p": 2, "q": 3, "major_radius": 3, "minor_radius": 1, "samples": 64},
            "varying": {"name": "minor_radius", "values": [1, 5]}, "outputs": ["packing"]}"#,
    )
    .unwrap();
    let out = knotbound(&["sweep", plan.to_str().unwrap(), "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
