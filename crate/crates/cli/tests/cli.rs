use std::process::{Command, Output};

use serde_json::Value;

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("spawn")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = hecke(args);
    let code = out.status.code().expect("exit code");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, json)
}

const HOOK: &str = r#"{"pages":[{"token":"1","outer":[2,1],"inner":[]}]}"#;

#[test]
fn tableaux_of_a_hook() {
    let (code, j) = report(&["tableaux", "--shape", HOOK]);
    assert_eq!(code, 0);
    assert_eq!(j["count"], 2);
    let (_, one) = report(&["tableaux", "--shape", r#"{"pages":[{"token":"1","outer":[1]}]}"#]);
    assert_eq!(one["count"], 1);
}

#[test]
fn colliding_pages_exit_2() {
    let out = hecke(&[
        "tableaux",
        "--shape",
        r#"{"pages":[{"token":"1","outer":[1]},{"token":"q^2","outer":[1]}]}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("PageCollision"));
}

#[test]
fn malformed_json_exit_2() {
    assert_eq!(hecke(&["rep", "--shape", "{not json"]).status.code(), Some(2));
    assert_eq!(hecke(&["inventory", "--r", "2"]).status.code(), Some(2));
}

#[test]
fn inventory_r2_n2() {
    let (code, j) = report(&["inventory", "--r", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["sum_dim_squared"], 8);
    assert_eq!(j["modules"].as_array().unwrap().len(), 5);
}

#[test]
fn non_semisimple_exit_1() {
    let (code, j) = report(&["inventory", "--u", "1,q^2", "--n", "2"]);
    assert_eq!(code, 1);
    assert_eq!(j["certificate"]["kind"], "ratio");
}

#[test]
fn g2_certificate() {
    let (code, j) = report(&["g2"]);
    assert_eq!(code, 0);
    let c = j["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 2);
    assert!(c.iter().all(|c| c["residual_nonzero"] == true));
}

#[test]
fn decompose_r2_p2_n2() {
    let (code, j) = report(&["decompose", "--r", "2", "--p", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["classes"].as_array().unwrap().len(), 3);
    assert_eq!(j["sum_dim_squared"], 4);
}

#[test]
fn spec_json_matches_flags() {
    let (_, a) = report(&["fixed-dim", "--spec", r#"{"r":2,"p":2,"n":2,"x":["1"],"q":"q"}"#]);
    let (_, b) = report(&["fixed-dim", "--r", "2", "--p", "2", "--n", "2"]);
    assert_eq!(a, b);
    assert_eq!(a["dimension"], 4);
}

#[test]
fn out_flag_splits_streams() {
    let dir = std::env::temp_dir().join(format!("hecke-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("center.json");
    let out = hecke(&["center", "--r", "2", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok:"));
    let j: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(j["ok"], true);
}

#[test]
fn emitted_shape_round_trips() {
    let shape = r#"{"pages":[{"token":"-1","outer":[2]},{"token":"1","outer":[3,2],"inner":[1]}]}"#;
    let (code, first) = report(&["verify", "--shape", shape, "--seed", "3"]);
    assert_eq!(code, 0);
    let again = first["shape"].to_string();
    let (_, second) = report(&["verify", "--shape", &again, "--seed", "3"]);
    assert_eq!(first, second);
    assert_eq!(first["negative_control"]["detected"], true);
}

#[test]
fn skewring_testbeds() {
    let (code, j) = report(&["skewring-check"]);
    assert_eq!(code, 0);
    assert!(j["algebras"].as_array().unwrap().len() >= 3);
}
