use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const NEG_Z_SQUARED: &str = r#"{"kind":"monomial","theta":3.141592653589793,"k":2}"#;

fn run(subcommand: &str, config: &str, out: Option<&Path>) -> Output {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, config).unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ulambda"));
    cmd.arg(subcommand).arg("--config").arg(&path).env("ULAMBDA_THREADS", "2");
    if let Some(out) = out {
        cmd.arg("--out").arg(out);
    }
    cmd.output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is the JSON artifact")
}

#[test]
fn membership_exit_code_encodes_the_verdict() {
    let member = run("membership", r#"{"lambda":0.5,"candidate":{"construction":"extremal","dilate":0.9}}"#, None);
    assert_eq!(member.status.code(), Some(0));
    assert_eq!(stdout_json(&member)["verdict"], "inside");

    let config = format!(r#"{{"lambda":0.5,"candidate":{{"construction":"phi","phi":{NEG_Z_SQUARED}}}}}"#);
    let outside = run("membership", &config, None);
    assert_eq!(outside.status.code(), Some(1));
    let report = stdout_json(&outside);
    assert_eq!(report["verdict"], "outside");
    assert!(report["sup_estimate"].as_f64().unwrap() > 2.9);
}

#[test]
fn julia_obstruction_reports_three() {
    let config = format!(r#"{{"lambda":0.5,"phi":{NEG_Z_SQUARED},"theta0":0.0}}"#);
    let out = run("julia", &config, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    let value = report["obstruction"]["value"].as_f64().unwrap();
    assert!((value - 3.0).abs() < 1e-9);
}

#[test]
fn configuration_errors_exit_four() {
    assert_eq!(run("membership", r#"{"lambda":0.5,"bogus":1}"#, None).status.code(), Some(4));
    assert_eq!(run("membership", "not json", None).status.code(), Some(4));
    assert_eq!(run("membership", r#"{"lambda":1.5,"candidate":{"construction":"extremal"}}"#, None).status.code(), Some(4));
    // phi(e^{i theta0}) != -1
    let config = format!(r#"{{"lambda":0.5,"phi":{NEG_Z_SQUARED},"theta0":1.5707963267948966}}"#);
    assert_eq!(run("julia", &config, None).status.code(), Some(4));

    let bin = env!("CARGO_BIN_EXE_ulambda");
    let missing = Command::new(bin).args(["membership", "--config", "/nonexistent/config.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(4));
    let usage = Command::new(bin).arg("no-such-subcommand").output().unwrap();
    assert_eq!(usage.status.code(), Some(4));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

#[test]
fn out_directory_receives_every_artifact() {
    let out = TempDir::new().unwrap();
    let config = r#"{"lambda":0.5,"omega":{"kind":"moebius","a":[0.4,0.0]},"resolution":512,"queries":[[0,0],[3,0]]}"#;
    let res = run("region-a2", config, Some(out.path()));
    assert_eq!(res.status.code(), Some(0), "{}", String::from_utf8_lossy(&res.stderr));
    assert!(res.stdout.is_empty());
    let csv = std::fs::read_to_string(out.path().join("region_a2.csv")).unwrap();
    assert!(csv.starts_with("theta,re,im\n"));
    assert_eq!(csv.lines().count(), 513);
    let svg = std::fs::read_to_string(out.path().join("region_a2.svg")).unwrap();
    assert!(svg.contains("<svg"));
    assert!(out.path().join("region_a2.json").exists());
}

#[test]
fn verify_conjecture_writes_the_bound_table() {
    let config = r#"{"lambda":0.3,"seed":5,"n_max":12,"samples":10,"families":["extremal","sampled"]}"#;
    let out = run("verify-conjecture", config, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,conjecture,theorem2,observed_max,family"));
    assert_eq!(lines.count(), 11);
}

#[test]
fn fixed_point_finds_the_cubic_root() {
    let config = r#"{"lambda":0.5,"a2":[1.5625,0.0],"omega":{"kind":"monomial","k":1},"r":0.8}"#;
    let out = run("fixed-point", config, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let w = stdout_json(&out);
    let z0 = w["z0"][0].as_f64().unwrap();
    assert!((z0 - 0.693_324_952_038_056_6).abs() < 1e-8);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let config = r#"{"lambda":0.7,"seed":11,"n_max":10,"samples":12}"#;
    let a = run("verify-conjecture", config, None);
    let b = run("verify-conjecture", config, None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
