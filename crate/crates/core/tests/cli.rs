use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use recollement::report::module_from_json;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recollement")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn passing_run_exits_zero() {
    let out = bin(&["verify-recollement", "--algebra", "T2_F2", "--idempotent", "e11"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["summary"]["failed"], 0);
    assert!(r["summary"]["checks"].as_u64().unwrap() > 20);
}

#[test]
fn non_idempotent_ideal_is_an_error() {
    let out = bin(&["kuhn-demo", "--algebra", "T2_F2", "--ideal", "rad"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:") && err.contains("not idempotent"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_algebra_is_an_error() {
    let out = bin(&["analyze", "--algebra", "no_such_algebra"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_document_reports_position() {
    let out = bin(&["analyze", "--algebra", &fixture("malformed.toml")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn toml_document_and_named_element() {
    let out = bin(&["verify-recollement", "--algebra", &fixture("t2.toml"), "--idempotent", "top"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let builtin = report(&bin(&["verify-recollement", "--algebra", "T2_F2", "--idempotent", "e11"]));
    assert_eq!(report(&out)["summary"]["checks"], builtin["summary"]["checks"]);
}

#[test]
fn corrupted_module_counterexample_replays() {
    let out = bin(&["analyze", "--algebra", "T2_F2", "--module", &fixture("corrupted_module.json")]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    let failing: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert_eq!(failing.len(), 1);
    let cx = &failing[0]["counterexample"];
    let a = Arc::new(recollement::builtins::load("T2_F2").unwrap());
    let m = module_from_json(&a, &cx["module"]).expect("counterexample rebuilds the module");
    assert!(m.check_representation_law().is_err());
}

#[test]
fn report_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("recollement-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let args = ["ttf", "--algebra", "F2xF2", "--seed", "3"];
    let out = bin(&args);
    let mut with_file = args.to_vec();
    let p = path.display().to_string();
    with_file.extend(["--report", &p]);
    let quiet = bin(&with_file);
    assert_eq!(quiet.status.code(), Some(0));
    assert!(quiet.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}
