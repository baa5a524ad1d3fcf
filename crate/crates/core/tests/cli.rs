use std::process::{Command, Output};

use perfcode::families::TableFile;
use perfcode::{build_group, GroupSpec};
use serde_json::Value;

fn perfcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_perfcode"))
        .args(args)
        .env_remove("PERFCODE_ORDER_BOUND")
        .output()
        .expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(bytes)))
}

#[test]
fn decide_quaternion_subgroup() {
    let out = perfcode(&["decide", "Q(24)", "--subgroup", "x^4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["verdict"], true);
    assert_eq!(v["method"], "Quaternion-Closed-Form");
    assert_eq!(v["witness"], serde_json::json!([1, 6, 11, 12, 13, 18, 19]));
    assert_eq!(v["negative_witness"], Value::Null);
}

#[test]
fn decide_negative_has_witness_of_failure() {
    let out = perfcode(&["decide", "Q(8)", "--subgroup", "x^2"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out.stdout);
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"], Value::Null);
    assert!(v["negative_witness"]["kind"].is_string());
}

#[test]
fn classify_exit_codes() {
    let out = perfcode(&["classify", "Z(8)"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out.stdout);
    assert_eq!(v["code_perfect"], false);
    assert_eq!(v["rejected_subgroup"]["labels"], serde_json::json!(["0", "4"]));

    let out = perfcode(&["classify", "D(6) x Z(3)", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["code_perfect"], true);
    assert!(v["subgroups_checked"].as_u64().unwrap() > 2);
}

#[test]
fn verify_reports_both_criteria() {
    let out = perfcode(&["verify", "Z(6)", "--s", "1,5", "--code", "0,3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["group_ring"], true);
    assert_eq!(v["graph_domination"], true);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["multiplicity"], serde_json::json!([1, 1, 1, 1, 1, 1]));

    let out = perfcode(&["verify", "Z(6)", "--s", "1,5", "--code", "0,2,4"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["multiplicity"], serde_json::json!([1, 2, 1, 2, 1, 2]));
}

#[test]
fn errors_are_json_on_stderr() {
    let out = perfcode(&["classify", "Q(10)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert_eq!(json(&out.stderr)["error"], "SemanticError");

    let out = perfcode(&["classify", "Z(3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "SyntaxError");

    let out = perfcode(&["verify", "Z(6)", "--s", "1", "--code", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "NotInverseClosed");

    let out = perfcode(&["decide", "Z(6)", "--subgroup", "w"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "UnknownLabel");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = perfcode(&["classify", "Z(4)", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn order_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_perfcode"))
        .args(["subgroups", "Z(16)"])
        .env("PERFCODE_ORDER_BOUND", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out.stderr)["error"], "OrderBoundExceeded");

    let out = perfcode(&["subgroups", "Z(16)", "--order-bound", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 5);
}

#[test]
fn graph_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q24.dot");
    let out = perfcode(&[
        "graph",
        "Q(24)",
        "--s",
        "x,x^11",
        "--highlight",
        "e,x^3,x^6,x^9,y,x^3*y,x^6*y,x^9*y",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["nodes"], 24);
    assert_eq!(v["edges"], 24);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph cayley {"));
    assert_eq!(dot.matches("fillcolor=gold").count(), 8);
    assert_eq!(dot.matches(" -- ").count(), 24);
}

#[test]
fn table_spec_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.json");
    let g = build_group(&GroupSpec::Dihedral(8)).unwrap();
    std::fs::write(&path, serde_json::to_string(&TableFile::from_group(&g)).unwrap()).unwrap();
    let spec = format!("table@{}", path.display());
    let out = perfcode(&["classify", &spec, "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stdout)["order4_element"], "r");
}

#[test]
fn codes_output_is_deterministic() {
    let a = perfcode(&["codes", "D(8) x Z(3)"]);
    let b = perfcode(&["codes", "D(8) x Z(3)"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines = String::from_utf8(a.stdout).unwrap();
    assert!(lines
        .lines()
        .all(|l| json(l.as_bytes())["decision"]["method"].is_string()));
}

#[test]
fn catalogue_small() {
    let out = perfcode(&["catalogue", "--max-order", "16"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));
    assert!(text.trim_end().ends_with("0 failed"));
}
