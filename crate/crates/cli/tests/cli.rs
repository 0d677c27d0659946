use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn loopdiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loopdiag")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("loopdiag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn mu_delta_suite_passes() {
    let out = loopdiag(&["check", "mu-delta"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["suite"], "mu-delta");
    assert_eq!(v["passed"], true);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = loopdiag(&["check", "frobenius-axioms", "--seed", "5"]);
    let b = loopdiag(&["check", "frobenius-axioms", "--seed", "5"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unknown_suite_fails() {
    let out = loopdiag(&["check", "nope"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
    assert!(out.stdout.is_empty());
}

#[test]
fn catalog_output_round_trips() {
    let out = loopdiag(&["catalog", "sh:2"]);
    assert!(out.status.success());
    let file = scratch("sh2.json", &out.stdout);
    let file = file.to_str().unwrap();
    let v = json(&loopdiag(&["validate", file]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["terms"].as_array().unwrap().len(), 3);
    // sh^2 is a cycle.
    let d = json(&loopdiag(&["diff", file]));
    assert!(d["terms"].as_array().unwrap().is_empty());
}

#[test]
fn b_squares_to_zero() {
    let out = loopdiag(&["catalog", "B"]);
    let file = scratch("b.json", &out.stdout);
    let file = file.to_str().unwrap();
    let c = loopdiag(&["compose", file, file]);
    assert!(c.status.success());
    assert!(json(&c)["terms"].as_array().unwrap().is_empty());
}

#[test]
fn connes_b_on_two_letters() {
    let t = scratch("t.json", br#"{"arity":2,"terms":[[[1,2],1]]}"#);
    let out = loopdiag(&["eval", "--catalog", "B", "--profile", "1/0", "--input", t.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json(&out);
    let terms = &v["parts"][0]["value"]["terms"];
    assert_eq!(terms, &serde_json::json!([[[0, 1, 2], 1], [[0, 2, 1], -1]]));
}

#[test]
fn eval_rejects_wrong_profile() {
    let t = scratch("t3.json", br#"{"arity":3,"terms":[[[1,1,1],1]]}"#);
    let out = loopdiag(&["eval", "--catalog", "B", "--profile", "1,0/0", "--input", t.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn cacti_homology_of_one_loop() {
    let out = loopdiag(&[
        "homology", "--source", "1/0", "--target", "1/0", "--subcomplex", "cacti", "--max-degree", "3", "--max-word-len", "3",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["betti"], serde_json::json!([1, 1, 0, 0]));
}

#[test]
fn malformed_input_is_an_error() {
    let f = scratch("bad.json", b"{\"signature\": 3}");
    let out = loopdiag(&["validate", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
