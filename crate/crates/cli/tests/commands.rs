use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CIRCLE: &str = r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"constant","value":0},"domain":[0,6.2832]}"#;
const SALKOWSKI: &str =
    r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"slant-torsion","m":1.3333,"sign":1},"domain":[0,0.7]}"#;
const PRECESSION: &str = r#"{
    "kappa": {"kind":"sinusoid","amplitude":1,"frequency":1},
    "tau": {"kind":"sinusoid","amplitude":1,"frequency":1,"phase":1.5707963267948966},
    "domain": [0.1, 3.0415926535897933]
}"#;
const HELIX: &str = r#"{"kappa":{"kind":"constant","value":0.8},"tau":{"kind":"constant","value":0.6},"domain":[0,3]}"#;

fn simcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simcurve")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn json(out: &[u8]) -> Value {
    serde_json::from_slice(out).unwrap()
}

#[test]
fn generate_plane_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let circle = write(dir.path(), "circle.json", CIRCLE);
    let out = simcurve(&["generate", "--kind", "plane", "--profile", &circle, "--step", "1e-3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,x,y,z,tx,ty,tz,nx,ny,nz,bx,by,bz,kappa,tau"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6285);
    assert!(rows.iter().all(|r| r.split(',').count() == 15));
}

#[test]
fn integrate_then_classify_precession() {
    let dir = tempfile::tempdir().unwrap();
    let profile = write(dir.path(), "precession.json", PRECESSION);
    let csv = dir.path().join("curve.csv");
    let out = simcurve(&["integrate", "--profile", &profile, "--step", "1e-3", "-o", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = simcurve(&["classify", "--curve", csv.to_str().unwrap(), "--expect", "ConstantPrecession"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out.stdout);
    let labels: Vec<&str> = report["labels"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert!(labels.contains(&"SlantHelix") && labels.contains(&"ConstantPrecession"), "{labels:?}");
    let sigma = report["stats"]["sigma"]["mean"].as_f64().unwrap();
    assert!((sigma + 1.0).abs() < 1e-3, "{sigma}");
    assert_eq!(report["verdicts"]["ConstantPrecession"], true);
}

#[test]
fn classify_expectation_false_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let helix = write(dir.path(), "helix.json", HELIX);
    let out = simcurve(&["classify", "--profile", &helix, "--expect", "PlaneCurve"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out.stdout)["labels"].as_array().unwrap().contains(&Value::from("CircularHelix")));
}

#[test]
fn similar_with_lambda_passes() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = write(dir.path(), "salkowski.json", SALKOWSKI);
    let out = simcurve(&["similar", "--alpha", &alpha, "--lambda", "1+s^2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = json(&out.stdout);
    for key in ["tangent", "normal", "binormal", "ratio", "overall"] {
        assert_eq!(report["verdicts"][key], true, "{key}: {report}");
    }
}

#[test]
fn non_similar_pair_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let circle = write(
        dir.path(),
        "circle.json",
        r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"constant","value":0},"domain":[0,3]}"#,
    );
    let helix = write(dir.path(), "helix.json", HELIX);
    let out = simcurve(&["similar", "--alpha", &circle, "--beta", &helix]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out.stdout)["verdicts"]["ratio"], false);
}

#[test]
fn errors_exit_two_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let missing = write(
        dir.path(),
        "bad.json",
        r#"{"kappa":{"kind":"constant","value":1},"tau":{"kind":"constant","value":0}}"#,
    );
    let out = simcurve(&["integrate", "--profile", &missing]);
    assert_eq!(out.status.code(), Some(2));
    let err = json(&out.stderr);
    assert_eq!(err["error"], "SchemaError");

    let out = simcurve(&["integrate", "--profile", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "IoError");

    let circle = write(dir.path(), "circle.json", CIRCLE);
    let out = simcurve(&["classify", "--profile", &circle, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));

    let out = simcurve(&["generate", "--kind", "helix", "--profile", &circle, "--n", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "BadAngle");

    let out = simcurve(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "UsageError");
}

#[test]
fn svg_projection_output() {
    let dir = tempfile::tempdir().unwrap();
    let helix = write(dir.path(), "helix.json", HELIX);
    let svg = dir.path().join("helix.svg");
    let out = simcurve(&[
        "integrate", "--profile", &helix, "--format", "svg", "--plane", "xz", "-o", svg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(svg).unwrap();
    assert!(text.starts_with("<svg") && text.contains("<polyline"));
}

#[test]
fn generate_salkowski_and_verify() {
    let out = simcurve(&["generate", "--kind", "salkowski", "--n", "0.8", "--domain", "0.1,0.9", "--step", "1e-2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = simcurve(&["verify", "--test", "similarity"]);
    assert_eq!(out.status.code(), Some(0));
    let out = simcurve(&["verify", "--test", "unknown"]);
    assert_eq!(out.status.code(), Some(2));
    let out = simcurve(&["verify", "--list"]);
    assert_eq!(json(&out.stdout)["suites"].as_array().unwrap().len(), 6);
}
