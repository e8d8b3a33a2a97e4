use std::process::Command;

use altlex::TransfiniteSeq;
use serde_json::{json, Value};

const X: &str = r#"{"segments":[{"finite":["1/2","0"]}]}"#;
const Y: &str = r#"{"segments":[{"finite":["3/4","0"]}]}"#;
const CHI_BELOW_OMEGA: &str = r#"{"k":1,"prefix":[],"rep":"1","top":"0"}"#;

fn altlex(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_altlex")).args(args).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).expect("report is JSON");
    assert!(v["version"].is_string(), "missing version in {v}");
    (v, out.status.code().unwrap())
}

#[test]
fn cmp_reports_order_delta_parity() {
    let (v, code) = altlex(&["cmp", X, Y]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "less");
    assert_eq!(v["delta"], "[]");
    assert_eq!(v["parity"], "even");
    let (v, _) = altlex(&["cmp", Y, X]);
    assert_eq!(v["order"], "greater");
}

#[test]
fn decompose_characteristic_function_of_naturals() {
    let (v, code) = altlex(&["decompose", CHI_BELOW_OMEGA]);
    assert_eq!(code, 0);
    assert_eq!(v["decomposition"]["rank"], "[[0,2]]");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["result"] == "pass"), "{v}");
}

#[test]
fn decompose_over_budget_exits_2_with_trace() {
    let (v, code) = altlex(&["--budget", "1", "decompose", CHI_BELOW_OMEGA]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "budget_exceeded");
    assert!(!v["error"]["trace"].as_array().unwrap().is_empty());
}

#[test]
fn emitted_witness_rechecks_and_round_trips() {
    let (v, code) = altlex(&["witness", X, Y]);
    assert_eq!(code, 0);
    let w: TransfiniteSeq = serde_json::from_value(v["witness"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&w).unwrap(), v["witness"]);
    let w = serde_json::to_string(&w).unwrap();
    let (v, code) = altlex(&["check-witness", X, Y, &w]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let (v, code) = altlex(&["check-witness", X, Y, Y]);
    assert_eq!(code, 1);
    assert_eq!(v["passed"], false);
}

#[test]
fn witness_needs_strict_order() {
    let (v, code) = altlex(&["witness", Y, X]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "precondition");
}

#[test]
fn invalid_input_is_a_validation_error() {
    let (v, code) = altlex(&["cmp", r#"{"segments":[]}"#, X]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "validation");
    let (_, code) = altlex(&["cmp", r#"{"segments":[{"finite":["1/2","1/4"]}]}"#, X]);
    assert_eq!(code, 1);
}

#[test]
fn verify_chain_flags_the_first_inversion() {
    let (v, code) = altlex(&["verify-chain", &format!("[{X},{Y}]")]);
    assert_eq!((code, v["chain"].clone()), (0, json!({"status": "ok"})));
    let (v, code) = altlex(&["verify-chain", &format!("[{Y},{X}]")]);
    assert_eq!(code, 1);
    assert_eq!(v["chain"]["status"], "violation");
}

#[test]
fn embed_images_are_increasing_and_parse_back() {
    let (v, code) = altlex(&["embed", r#"{"duplicate":{"finite_chain":3}}"#]);
    assert_eq!(code, 0);
    assert_eq!(v["chain"]["status"], "ok");
    let images = v["images"].as_array().unwrap();
    assert_eq!(images.len(), 6);
    for i in images {
        let s: TransfiniteSeq = serde_json::from_value(i["image"].clone()).unwrap();
        assert!(s.is_universal());
    }
}

#[test]
fn evenize_and_canon() {
    let (v, _) = altlex(&["evenize", X]);
    assert_eq!(v["parity"], "even");
    let tail = r#"{"segments":[{"finite":["1"]},{"tail":{"start":"3/4","limit":"1/2"}},{"finite":["0"]}]}"#;
    let (v, _) = altlex(&["canon", tail]);
    assert_eq!(v["seq"]["segments"][0], json!({"tail": {"start": "1", "limit": "1/2"}}));
}

#[test]
fn stage_comparison_and_theta() {
    let f0 = r#"{"k":1,"prefix":[],"rep":"0","top":"1/2"}"#;
    let f1 = r#"{"k":1,"prefix":[],"rep":"1","top":"1/2"}"#;
    let (v, code) = altlex(&["klcmp", f0, f1]);
    assert_eq!(code, 0);
    assert_eq!(v["parity"], "even");
    let (_, code) = altlex(&["klcmp", f1, f0]);
    assert_eq!(code, 1);
    let (v, code) = altlex(&["theta-cmp", f0, f1]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "less");
}

#[test]
fn output_is_deterministic() {
    let a = Command::new(env!("CARGO_BIN_EXE_altlex")).args(["psi", X]).output().unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_altlex")).args(["psi", X]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn injected_parity_fault_exits_3() {
    let out = Command::new(env!("CARGO_BIN_EXE_altlex"))
        .args(["selftest", "--inject-fault", "parity"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
