use std::process::{Command, Output};

use serde_json::{json, Value};

fn sfcensus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sfcensus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn invariants_of_the_237_manifold() {
    let o = sfcensus(&[
        "invariants",
        r#"{"genus":0,"b":1,"fibers":[[2,1],[3,1],[7,1]]}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout_json(&o),
        json!({"e":"-83/42","chi":"-1/42","sv":"1/3486","torsion":83,"geometry":"TildePSL2R"})
    );
}

#[test]
fn flat_bases_lists_five() {
    let o = sfcensus(&["flat-bases"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o).as_array().unwrap().len(), 5);
}

#[test]
fn parabolic_monodromy_is_a_domain_error() {
    let o = sfcensus(&["bundle-invariants", r#"{"matrix":[[1,1],[0,1]]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o), json!({"error": "not Anosov: |trace| = 2"}));
}

#[test]
fn malformed_input_and_unknown_commands_exit_2() {
    assert_eq!(sfcensus(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        sfcensus(&["invariants", "{not json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sfcensus(&["invariants", r#"{"genus":0}"#]).status.code(),
        Some(2)
    );
    assert_eq!(
        sfcensus(&["bundle-invariants", r#"{"matrix":[1,2,3]}"#])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn non_coprime_fiber_is_a_domain_error() {
    let o = sfcensus(&["normalize", r#"{"genus":0,"b":0,"fibers":[[4,2]]}"#]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout_json(&o)["error"].is_string());
}

#[test]
fn normalize_is_a_fixpoint() {
    let raw = r#"{"genus":1,"b":2,"fibers":[[5,-3],[1,4],[3,7]]}"#;
    let once = sfcensus(&["normalize", raw]);
    let text = String::from_utf8(once.stdout.clone()).unwrap();
    let twice = sfcensus(&["normalize", text.trim()]);
    assert_eq!(once.stdout, twice.stdout);
    let a = sfcensus(&["invariants", raw]);
    let b = sfcensus(&["invariants", text.trim()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn same_bundle_returns_a_witness() {
    let o = sfcensus(&[
        "same-bundle",
        r#"{"a":{"matrix":[[2,1],[1,1]]},"b":{"matrix":[[1,1],[1,2]]}}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["same"], json!(true));
    assert!(v["conjugator"].is_array());
}

#[test]
fn check_with_inline_budget() {
    let o = sfcensus(&[
        "check",
        r#"{"budget":{"torsion_order":1,"rank_bound":10,"sv_bound":"10","norm_budget":10},
            "target":{"genus":0,"b":1,"fibers":[[2,1],[3,1],[6,1]]}}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["passed"], json!(false));
    assert_eq!(v["torsion"], json!(72));
}

#[test]
fn enumerate_streams_json_lines() {
    let o = sfcensus(&[
        "enumerate",
        r#"{"torsion_order":5,"rank_bound":1,"sv_bound":"1/2","norm_budget":0}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(o.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().any(|r| r["case"] == "c"));
    let cutoffs: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(cutoffs["cutoffs"]["traces"], json!([-3, 3, 7]));
}

#[test]
fn rationals_are_exact_strings() {
    let o = sfcensus(&["invariants", r#"{"genus":2,"b":-1,"fibers":[[3,1],[3,2]]}"#]);
    let v = stdout_json(&o);
    assert_eq!(v["e"], json!("0"));
    assert_eq!(v["chi"], json!("-10/3"));
    assert_eq!(v["sv"], Value::Null);
}
