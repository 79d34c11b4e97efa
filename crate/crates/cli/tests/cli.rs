use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn job(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/jobs").join(name)
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_flatquot")).args(args).output().unwrap();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), report)
}

fn run_job(name: &str, extra: &[&str]) -> (i32, Value) {
    let p = job(name);
    let mut args = vec!["--job", p.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn p1_chart_generator() {
    let (code, r) = run_job("p1_chart.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["generators"][0], "y*x_inv");
    assert_eq!(r["format_version"], 1);
}

#[test]
fn gallery_exit_codes() {
    let (code, r) = run_job("gallery_p1.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["quotients"][0]["generators"][0], "y*x_inv");
    let (code, r) = run_job("gallery_a1.json", &[]);
    assert_eq!(code, 1);
    assert!(r["result"]["checks"][0]["witness"].as_str().unwrap().contains("2*x"));
}

#[test]
fn pgl2_small_bound_is_inconclusive() {
    assert_eq!(run_job("pgl2.json", &["--bound", "1"]).0, 2);
    let (code, r) = run_job("pgl2.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["generators"].as_array().unwrap().len(), 6);
}

#[test]
fn quotient_tasks() {
    let (code, r) = run_job("sign_flf.json", &[]);
    assert_eq!(code, 0, "{r}");
    let names: Vec<&str> = r["result"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"fiber square over F_25"));
    assert_eq!(run_job("sign_line.json", &[]).0, 1);
    assert_eq!(run_job("mu2_torsor.json", &[]).0, 0);
    assert_eq!(run_job("plane_freeness.json", &[]).0, 1);
    assert_eq!(run_job("plane_freeness.json", &["--bound", "1"]).0, 2);
}

#[test]
fn descent_tasks() {
    let (code, r) = run_job("hilbert90.json", &[]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["result"]["descended"]["gens"], 1);
    assert_eq!(run_job("bad_phi.json", &[]).0, 1);
    assert_eq!(run_job("amitsur.json", &[]).0, 0);
}

#[test]
fn other_tasks() {
    let (code, r) = run_job("finite_free.json", &[]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["rank"], 2);
    assert_eq!(r["result"]["elements"][0]["norm"], "-u");
    assert_eq!(run_job("kummer.json", &[]).0, 0);
}

#[test]
fn input_errors_exit_3() {
    let (code, r) = run_job("malformed.json", &[]);
    assert_eq!(code, 3);
    assert!(r["error"].as_str().unwrap().contains(":2:"));
    assert_eq!(run_job("unknown_task.json", &[]).0, 3);
    assert_eq!(run(&["--job", "/nonexistent/job.json"]).0, 3);
}

#[test]
fn reports_are_deterministic() {
    let a = strip_timing(run_job("sign_flf.json", &["--seed", "7"]).1);
    let b = strip_timing(run_job("sign_flf.json", &["--seed", "7"]).1);
    assert_eq!(a, b);
    assert_eq!(a["seed"], 7);
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let p = job("mu2_torsor.json");
    let (code, _) = run(&["--job", p.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
}

#[test]
fn gallery_listing() {
    let (code, r) = run(&["--list-gallery"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["gallery"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names.first(), Some(&"pgl2"));
    assert!(names.contains(&"equivariant_nondescent"));
}
