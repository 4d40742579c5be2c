use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(name).to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("twistq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn twistq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistq")).args(args).output().unwrap()
}

fn result(args: &[&str]) -> Value {
    let out = twistq(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    v["result"].clone()
}

#[test]
fn homology_of_r3() {
    let r = result(&["homology", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--variant", "TQ", "--degree", "2"]);
    assert_eq!(r["invariant_factors"], serde_json::json!([3, 3]));
    assert_eq!(r["t_action"], serde_json::json!([[2, 0], [0, 2]]));
}

#[test]
fn hopf_invariant() {
    let phi = scratch("hopf_phi.txt", "0,1 -> T\n1,0 -> 1\n");
    let hopf = data("hopf.pd");
    let r = result(&["invariant", "--pd", &hopf, "--quandle", "T(2)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &phi]);
    assert_eq!(r["value"], "2 + 2st");
    assert_eq!(r["colorings"], 4);
    let par = result(&["invariant", "--pd", &hopf, "--quandle", "T(2)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &phi, "--jobs", "3"]);
    assert_eq!(par, r);
}

#[test]
fn modular_construction() {
    let out = scratch("phi_out.txt", "");
    let r = result(&["cocycle", "construct", "modular", "--p", "3", "--m", "2", "--h", "T+1", "--out", &out]);
    assert_eq!(r["cocycle"], serde_json::json!(["0,2 -> 1", "1,0 -> 2", "1,2 -> 1", "2,0 -> 2"]));
    assert_eq!(r["total"], "Z9[T]/(T+1)");
    let v = result(&["cocycle", "verify", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--cocycle", &out]);
    assert_eq!(v["cocycle"], true);
}

#[test]
fn pairing_and_degree_mismatch() {
    let theta = scratch("theta.txt", "");
    result(&["cocycle", "construct", "lift", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--degree", "2", "--seed", "0,1@0=1", "--out", &theta]);
    let c = scratch("c.txt", "0,1,0 -> 1\n0,2,0 -> -1\n");
    let r = result(&["cocycle", "pair", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--cocycle", &theta, "--chain", &c]);
    assert_eq!(r["value"], "2");
    let v = result(&["cocycle", "verify", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--cocycle", &theta]);
    assert_eq!(v["coboundary"], false);
    let short = scratch("short.txt", "0,1 -> 1\n");
    let out = twistq(&["cocycle", "pair", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--cocycle", &theta, "--chain", &short]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degree mismatch"));
}

#[test]
fn quandle_commands() {
    assert_eq!(result(&["quandle", "iso", "--a", "R(6)", "--b", "A(6;T+1)"])["isomorphic"], true);
    assert_eq!(result(&["quandle", "iso", "--a", "R(3)", "--b", "T(3)"])["isomorphic"], false);
    let table = scratch("r3.txt", "3\n0 2 1\n2 1 0\n1 0 2\n");
    let info = result(&["quandle", "info", "--quandle", &table]);
    assert_eq!(info["size"], 3);
    assert_eq!(info["involutory"], true);
}

#[test]
fn faces_and_base() {
    let torus = data("torus.pd");
    let r = result(&["invariant", "--pd", &torus, "--list-faces"]);
    assert_eq!(r["faces"].as_array().unwrap().len(), 2);
    let hopf = data("hopf.pd");
    let phi = scratch("hopf_phi2.txt", "0,1 -> T\n1,0 -> 1\n");
    let a = result(&["invariant", "--pd", &hopf, "--quandle", "T(2)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &phi]);
    let b = result(&["invariant", "--pd", &hopf, "--quandle", "T(2)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &phi, "--base", "1L"]);
    // 2 + 2st is fixed by T, so moving the base face changes nothing
    assert_eq!(a, b);
    let out = twistq(&["invariant", "--pd", &hopf, "--quandle", "T(2)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &phi, "--base", "nowhere"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn surface_invariant() {
    let theta = scratch("surf_theta.txt", "0,1,2 -> T+1\n");
    let r = result(&["invariant-surface", "--surface", &data("spun_hopf.surf"), "--quandle", "T(3)", "--coeff", "Z0[T]/(T^2-1)", "--cocycle", &theta]);
    assert_eq!(r["colorings"], 27);
    assert_eq!(r["triple_points"], 4);
}

#[test]
fn exit_codes() {
    assert_eq!(twistq(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(twistq(&["homology", "--quandle", "R(3)"]).status.code(), Some(64));
    assert_eq!(twistq(&["--help"]).status.code(), Some(0));
    let bad = twistq(&["homology", "--quandle", "R(3)", "--coeff", "Z4[T]/(2T+1)", "--degree", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not invertibly"));
    let guarded = Command::new(env!("CARGO_BIN_EXE_twistq"))
        .args(["homology", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--degree", "2"])
        .env("TWISTQ_MAX_BASIS", "10")
        .output()
        .unwrap();
    assert_eq!(guarded.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["cohomology", "--quandle", "R(3)", "--coeff", "Z3[T]/(T+1)", "--degree", "2"];
    let a = twistq(&args);
    let b = twistq(&args);
    assert_eq!(a.stdout, b.stdout);
    let timed = twistq(&["--timing", "homology", "--quandle", "T(2)", "--coeff", "Z2[T]/(T+1)", "--degree", "2"]);
    let v: Value = serde_json::from_slice(&timed.stdout).unwrap();
    assert!(v["wall_time_ms"].is_number());
    assert_eq!(v["inputs_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn verify_suite_catalogs() {
    let empty = scratch("empty.ini", "# nothing\n");
    let out = twistq(&["verify-suite", &empty]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuous"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);

    let perturbed = scratch("perturbed.ini", "[6]\np = 3\nm = 2\nh = T+1\nphi = 0,1 -> 1; 0,2 -> 1; 1,0 -> 1; 1,2 -> 2; 2,0 -> 2; 2,1 -> 1\n");
    let r = result(&["verify-suite", &perturbed]);
    assert_eq!(r["passed"], false);
    let six = &r["outcomes"][5];
    assert_eq!(six["status"], "FAIL");
    assert!(six["detail"].as_str().unwrap().contains("[0, 1]"));
}
