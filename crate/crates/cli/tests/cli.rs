use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn hochkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochkit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = hochkit(&["delta", "--vars", "1", "D[2]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "-2*D[1|1]\n");
    let o = hochkit(&["bracket", "--vars", "1", "D[1]", "x1*D[1]"]);
    assert_eq!(stdout(&o), "D[1]\n");
}

#[test]
fn cohomology_json_schema() {
    let o = hochkit(&[
        "cohomology",
        "--vars",
        "2",
        "--order",
        "2",
        "--deg",
        "2",
        "--nmax",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["window"]["m"], 2);
    assert_eq!(v["window"]["slack"], 2);
    assert_eq!(v["dims"], serde_json::json!([6, 12, 6]));
    assert_eq!(v["hkr_prediction"], serde_json::json!([6, 12, 6]));
    assert_eq!(v["basis_sizes"].as_array().unwrap().len(), 3);
    assert_eq!(v["match"], true);
}

#[test]
fn operator_json_matches_text() {
    let text = hochkit(&["cup", "--vars", "2", "x1*D[1,0]", "D[0,1]"]);
    assert_eq!(stdout(&text), "x1*D[1,0|0,1]\n");
    let json = hochkit(&["cup", "--vars", "2", "x1*D[1,0]", "D[0,1]", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["vars"], 2);
    assert_eq!(v["arity"], 2);
    let term = &v["terms"][0];
    assert_eq!(term["slots"], serde_json::json!([[1, 0], [0, 1]]));
    assert_eq!(
        term["coeff"],
        serde_json::json!([{"exps": [1, 0], "num": "1", "den": "1"}])
    );
}

#[test]
fn signed_cup_flips_odd_pairs() {
    let o = hochkit(&["cup", "--vars", "1", "D[1]", "D[1]", "--cup-sign", "paper"]);
    assert_eq!(stdout(&o), "-D[1|1]\n");
}

#[test]
fn compose_slots_are_one_based() {
    let o = hochkit(&["compose", "--vars", "1", "D[1|1]", "x1*D[1]", "--slot", "2"]);
    assert_eq!(stdout(&o), "x1*D[1|2] + D[1|1]\n");
    let o = hochkit(&["compose", "--vars", "1", "D[1|1]", "D[1]", "--slot", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_applies_to_polynomials() {
    let o = hochkit(&["eval", "--vars", "2", "x1*D[1,0|0,1]", "x1^2", "x1*x2"]);
    assert_eq!(stdout(&o), "2*x1^3\n");
}

#[test]
fn split_reports_primitive_and_field() {
    let o = hochkit(&[
        "split",
        "--vars",
        "2",
        "D[1,0|0,1]",
        "--order",
        "2",
        "--deg",
        "1",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["eta"]["degree"], 2);
    assert_eq!(
        v["eta"]["components"][0]["indices"],
        serde_json::json!([1, 2])
    );
    assert_eq!(v["E"]["arity"], 1);
}

#[test]
fn sder_decompose_json() {
    let o = hochkit(&[
        "sder-decompose",
        "--vars",
        "1",
        "x1*D[2]",
        "--order",
        "2",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["words"][0]["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn reads_operator_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hochkit"))
        .args(["delta", "--vars", "1", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"D[2]\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "-2*D[1|1]\n");
}

#[test]
fn exit_codes() {
    // parse errors carry a position and the expected tokens
    let o = hochkit(&["delta", "--vars", "1", "D[2] +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:7"), "{}", stderr(&o));
    assert!(stderr(&o).contains("expected"));

    assert_eq!(
        hochkit(&["delta", "--vars", "1", "x2*D[1]"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hochkit(&["delta", "--vars", "1", "D[1] + D[1|1]"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hochkit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hochkit(&["delta", "D[1]"]).status.code(), Some(2));

    // domain errors
    let o = hochkit(&[
        "split", "--vars", "1", "D[2|1]", "--order", "2", "--deg", "1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("cocycle"));
    let o = hochkit(&["sder-decompose", "--vars", "1", "D[3]", "--order", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = hochkit(&["eval", "--vars", "1", "D[1|1]", "x1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn selftest_reports_counts() {
    let o = hochkit(&["selftest", "--seed", "3", "--cases", "5", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["seed"], 3);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], c["total"], "{}", c["name"]);
    }
}

#[test]
fn thread_cap_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_hochkit"))
        .args([
            "cohomology",
            "--vars",
            "1",
            "--order",
            "2",
            "--deg",
            "2",
            "--nmax",
            "3",
            "--json",
        ])
        .env("HOCHKIT_THREADS", "1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dims"], serde_json::json!([3, 3, 0, 0]));
}
