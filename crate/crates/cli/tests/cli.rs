use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn defring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let out = defring(&full);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, value)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn h1_of_sl3f2_vanishes() {
    let (code, r) = report(&["h1", "--group", "sl3f2"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["h1"], 0);
    assert_eq!(r["z1"], r["b1"]);
}

#[test]
fn enumeration_counts_and_is_shard_independent() {
    let one = defring(&["enumerate", "--group", "sl2f3", "--target", "Z/3^2", "--shards", "1", "--json"]);
    let four = defring(&["enumerate", "--group", "sl2f3", "--target", "Z/3^2", "--shards", "4", "--json"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let r: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_eq!(r["classes"], 3);
    assert_eq!(r["lifts"], 81);
}

#[test]
fn exceptional_lift_verifies() {
    let (code, r) = report(&["verify-lift", "--which", "sl2f5", "--precision", "12"]);
    assert_eq!(code, 0);
    assert_eq!(r["relators"]["holds"], true);
    assert_eq!(r["reduces_to_base"], true);
}

#[test]
fn certificate_round_trip_recovers_the_hom() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let done = dir.path().join("done.json");
    let report_path = dir.path().join("report.json");
    let out = defring(&[
        "make-certificate", "--source", "Z/4", "--target", "Z/2[x]/(x^3)", "--n", "4", "--seed", "5", "--emit",
        cert.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = defring(&[
        "normalize", cert.to_str().unwrap(), "--emit", done.to_str().unwrap(), "--out",
        report_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let done = read_json(&done);
    assert_eq!(done["recovered_hom"], done["hom"]);
    assert!(!done["conjugator_chain"].as_array().unwrap().is_empty());
    assert_eq!(read_json(&report_path)["passed"], true);
}

#[test]
fn unsupported_case_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let made = defring(&[
        "make-certificate", "--source", "Z/4", "--target", "Z/4", "--n", "3", "--emit", cert.to_str().unwrap(),
    ]);
    assert!(made.status.success());
    let (code, r) = report(&["normalize", cert.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    assert!(r["error"].as_str().unwrap().contains("unsupported"), "{r}");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(defring(&["h1", "--group", "sl2f3", "--bogus"]).status.code(), Some(2));
    assert_eq!(defring(&["ring", "Z/6"]).status.code(), Some(2));
    assert_eq!(defring(&["normalize", "/nonexistent/cert.json"]).status.code(), Some(2));
    assert_eq!(defring(&["chebyshev", "--ring", "Z/5", "--n", "4"]).status.code(), Some(2));
    assert_eq!(defring(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn chebyshev_scan_agrees() {
    let (code, r) = report(&["chebyshev", "--ring", "Z/5"]);
    assert_eq!(code, 0);
    for scan in r["scans"].as_array().unwrap() {
        assert_eq!(scan["agree"], scan["valid"]);
    }
}

#[test]
fn decompose_reads_a_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.json");
    std::fs::write(&file, r#"{"ring": "Z/8", "matrix": [["1", "4"], ["4", "1"]], "ideal": ["2"]}"#).unwrap();
    let (code, r) = report(&["decompose", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(r["round_trip"], true);
    std::fs::write(&file, r#"{"ring": "Z/8", "matrix": [["1", "2"], ["0", "1"]], "ideal": ["2"]}"#).unwrap();
    let (code, r) = report(&["decompose", file.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(r["error"].is_string());
}

#[test]
fn ring_lists_elements() {
    let (code, r) = report(&["ring", "Z/3[x]/(x^2)", "--elements"]);
    assert_eq!(code, 0);
    assert_eq!(r["size"], 9);
    assert_eq!(r["elements"].as_array().unwrap().len(), 9);
    assert_eq!(r["nilpotency_index"], 2);
}

#[test]
fn relations_hold_over_z9() {
    let (code, r) = report(&["relations", "--ring", "Z/9", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["exhaustive"], true);
}

#[test]
fn acceptance_criterion_runs() {
    let (code, r) = report(&["acceptance", "--criterion", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["criteria"][0]["passed"], true);
}
