use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lie-sbe"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lie-sbe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn check_reports_betti_numbers() {
    let out = run(&["check", "catalog:l_6_7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["jacobi"]["status"], "ok", "{v}");
    assert_eq!(v["fingerprint"]["betti"][2], 5);
}

#[test]
fn certify_h2c_on_s_prime() {
    let out = run(&["certify", "--h2c", "catalog:s_prime"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "yes");
    let no = run(&["certify", "--lauret", "catalog:s_prime"]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(json(&no)["verdict"], "no");
}

#[test]
fn buildings_witness() {
    let out = run(&["buildings", "--p", "6", "--q", "3", "--p2", "16", "--q2", "5", "--bound", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let w = v["witnesses"].as_array().unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!((w[0]["m"].as_u64(), w[0]["n"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn dump_then_load_round_trips() {
    let dump = run(&["catalog", "dump", "l_6_13"]);
    assert_eq!(dump.status.code(), Some(0));
    let p = scratch("l_6_13.json", std::str::from_utf8(&dump.stdout).unwrap());
    let again = run(&["catalog", "dump", "l_6_13"]);
    assert_eq!(dump.stdout, again.stdout);
    let a = json(&run(&["check", "catalog:l_6_13"]));
    let b = json(&run(&["check", p.to_str().unwrap()]));
    assert_eq!(a, b);
}

#[test]
fn user_catalog_directory() {
    let body = String::from_utf8(run(&["catalog", "dump", "heis(3)"]).stdout).unwrap();
    let p = scratch("my_heis.json", &body);
    let dir = p.parent().unwrap();
    let out = bin().args(["check", "catalog:my_heis"]).env("LIE_SBE_CATALOG", dir).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let list = bin().args(["catalog", "list"]).env("LIE_SBE_CATALOG", dir).output().unwrap();
    assert!(json(&list).as_array().unwrap().iter().any(|n| n == "my_heis"));
}

#[test]
fn malformed_inputs_are_computation_errors() {
    let zero = scratch("zero.json", r#"{"dim":2,"basis":["A","B"],"brackets":[{"i":1,"j":2,"k":1,"c":"1/0"}]}"#);
    let out = run(&["check", zero.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    let order = scratch("order.json", r#"{"dim":2,"basis":["A","B"],"brackets":[{"i":2,"j":1,"k":1,"c":"1"}]}"#);
    assert_eq!(run(&["check", order.to_str().unwrap()]).status.code(), Some(3));

    let syntax = scratch("syntax.json", "{\"dim\": 2,\n  \"basis\": [}");
    let out = run(&["check", syntax.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn jacobi_failure() {
    let bad = scratch("bad.json", r#"{"dim":3,"basis":["X","Y","Z"],"brackets":[{"i":1,"j":2,"k":3,"c":"1"},{"i":1,"j":3,"k":1,"c":"1"}]}"#);
    let p = bad.to_str().unwrap();
    assert_eq!(run(&["check", p]).status.code(), Some(3));
    let out = run(&["check", "--skip-validate", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["jacobi"]["status"], "violation");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["certify", "catalog:s_prime"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "catalog:l_6_7"]).status.code(), Some(2));
}

#[test]
fn classify_and_reduce() {
    let out = run(&["classify", "catalog:s_prime"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["target"], "complex_hyperbolic_plane");
    assert_eq!(v["commable_to"], "S_prime");
    assert_eq!(run(&["classify", "catalog:heis(3)"]).status.code(), Some(1));

    let r = json(&run(&["reduce", "catalog:s_second", "--cartan", "4"]));
    assert!(r["family"].is_object(), "{r}");
}

#[test]
fn pinch_is_seeded() {
    let args = ["pinch", "--alpha", "J3", "--eps", "0.01", "--samples", "3000", "--seed", "7"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = json(&a)["ratio"].as_f64().unwrap();
    assert!((1.0..1.1).contains(&r), "{r}");
}

#[test]
fn text_mode() {
    let out = run(&["--text", "cohomology", "catalog:heis(3)", "--degree", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("dim H = 2"));
}
