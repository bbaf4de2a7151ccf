use std::process::{Command, Output};
use std::sync::Arc;

use hecke_kit::coxeter::{CoxeterSystem, GenSet};
use hecke_kit::repmod::HeckeModule;
use hecke_kit::scalars::ParamSpec;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke-kit"))
        .args(args)
        .env_remove("HECKE_KIT_CAP")
        .output()
        .expect("run hecke-kit")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn describe_double_cosets() {
    let out = run(&[
        "describe", "--group", "A3", "--I", "1,2", "--J", "1,2", "--format", "json",
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["order"], 24);
    let rows = v["double_cosets"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["tau"], "e");
    assert_eq!(rows[0]["K"], serde_json::json!([1, 2]));
    assert_eq!(rows[1]["tau"], "s3");
    assert_eq!(rows[1]["K"], serde_json::json!([1]));
}

#[test]
fn describe_order_and_coset_reps() {
    let v = json_of(&run(&["describe", "--group", "I2(7)", "--format", "json"]));
    assert_eq!(v["order"], 14);
    let v = json_of(&run(&["describe", "--group", "A2", "--I", "1", "--format", "json"]));
    assert_eq!(v["left_coset_reps"], serde_json::json!(["e", "s2", "s1*s2"]));
}

#[test]
fn check_mackey_regular_passes() {
    let out = run(&[
        "check", "mackey", "--group", "A3", "--I", "1,2", "--J", "1,2", "--module", "regular", "--params", "1,0",
        "--params", "0,0", "--params", "2,3", "--format", "json",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    for r in reports {
        assert_eq!(r["passed"], true);
        assert_eq!(r["dims"]["lhs"], 24);
        assert_eq!(r["dims"]["block e"], 6);
        assert_eq!(r["dims"]["block s3"], 18);
    }
}

#[test]
fn check_pairing_single_boxes() {
    let out = run(&[
        "check",
        "anti-twists",
        "--m",
        "1",
        "--n",
        "1",
        "--M",
        "scalar:1",
        "--N",
        "scalar:0",
        "--params",
        "1,0",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn check_theta_braid_b3() {
    let out = run(&["check", "theta-braid", "--group", "B3", "--format", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let checks = v["reports"][0]["checks"].as_array().unwrap();
    // m = 3, 2, 4 for the three pairs.
    assert_eq!(checks.len(), 3 + 2 + 4);
}

#[test]
fn check_other_families() {
    for args in [
        &["check", "corollary", "--m", "2", "--n", "1", "--k", "2"][..],
        &["check", "outer-twists", "--m", "2", "--n", "1", "--M", "regular"][..],
        &["check", "algebra", "--group", "A2"][..],
    ] {
        let out = run(args);
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
    }
}

#[test]
fn group_cap_is_reported() {
    let out = run(&["--group-cap", "100", "describe", "--group", "H4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 100"));

    let out = Command::new(env!("CARGO_BIN_EXE_hecke-kit"))
        .args(["describe", "--group", "A3"])
        .env("HECKE_KIT_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 10"));
}

#[test]
fn bad_input_is_an_error() {
    for args in [
        &["describe", "--group", "A3", "--I", "1,4"][..],
        &["describe", "--group", "A3", "--I", "1,x"][..],
        &["describe", "--group", "Q7"][..],
        &[
            "check", "mackey", "--group", "A2", "--I", "1", "--module", "scalar:5", "--params", "1,0",
        ][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn scene_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let scene = dir.path().join("scene.json");
    std::fs::write(&scene, r#"{ "group": "A3", "I": "1,2", "J": "1", "params": ["2,3"] }"#).unwrap();
    let s = scene.to_str().unwrap();
    let v = json_of(&run(&["check", "mackey", "--scene", s, "--format", "json"]));
    assert_eq!(v["reports"][0]["instance"]["J"], serde_json::json!([1]));
    let v = json_of(&run(&["check", "mackey", "--scene", s, "--J", "3", "--format", "json"]));
    assert_eq!(v["reports"][0]["instance"]["J"], serde_json::json!([3]));
    assert_eq!(v["passed"], true);
}

#[test]
fn module_file_runs_at_its_parameters() {
    let sys = Arc::new(CoxeterSystem::named("B3").unwrap());
    let m = HeckeModule::regular(&sys, GenSet::from_labels(&[1, 3]), &ParamSpec::new(-1, 1))
        .unwrap()
        .random_conjugate(5)
        .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, m.to_json()).unwrap();
    let out_path = dir.path().join("report.json");
    let out = run(&[
        "check",
        "mackey",
        "--group",
        "B3",
        "--I",
        "1,3",
        "--J",
        "2,3",
        "--module",
        path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["params"]["a"], "-1");
}
