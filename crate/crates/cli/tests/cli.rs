use std::process::{Command, Output};

use strata_cones::verify::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strata-cones"))
        .args(args)
        .env_remove("STRATA_CONES_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn describe_three_cycle() {
    let o = run(&["describe", "--p", "2", "--cycles", "3", "--t", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for needle in [
        "T̃      = {0.0,0.1}",
        "-k0 + 2k1 ≥ 0",
        "-k0 + 2k1 + 4k2 ≥ 0",
        "line  ±(2, 1, 0)",
        "ray   (-4, 0, -1)",
        "𝔹(T)   = {0.0}",
        "-l0 ≥ 0",
        "l0 + 4l1 ≥ 0",
    ] {
        assert!(s.contains(needle), "missing {needle:?} in\n{s}");
    }
}

#[test]
fn describe_json_fields() {
    let o = run(&["describe", "--p", "2", "--cycles", "3", "--t", "0.1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["tilde"], "0.0,0.1");
    assert_eq!(v["S"], serde_json::json!(["0.0", "0.1"]));
    assert_eq!(
        v["halfspaces"]["inequalities"],
        serde_json::json!([["-1", "2", "0"], ["-1", "2", "4"]])
    );
    assert_eq!(v["generators_Gprime"]["lines"], serde_json::json!([["2", "1", "0"]]));
    assert!(v["generators_G"]["rays"].as_array().unwrap().len() == 4);
}

#[test]
fn describe_empty_stratum_is_hasse_cone() {
    let o = run(&["describe", "--p", "3", "--cycles", "2", "--t", "", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(
        v["halfspaces"]["inequalities"],
        serde_json::json!([["1", "3"], ["3", "1"]])
    );
    let hasse = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "hasse_cone")
        .unwrap();
    assert_eq!(hasse["status"], "pass");
}

#[test]
fn usage_errors_exit_three() {
    let o = run(&["describe", "--p", "4", "--cycles", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("p must be prime"));

    let o = run(&["explore", "--d-max", "0"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["describe", "--p", "2", "--cycles", "3", "--t", "0.1,0.7"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("position 4"), "{}", stderr(&o));

    let o = run(&["member", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("dimension mismatch"));

    let o = run(&["member", "--p", "2", "--cycles", "3"]);
    assert_eq!(o.status.code(), Some(3));

    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    let o = run(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("explore"));
}

#[test]
fn check_single_stratum() {
    let o = run(&["check", "--p", "2", "--cycles", "3", "--t", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 fail"));

    let o = run(&["check", "--p", "3", "--cycles", "2", "--t", "0.1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Report = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r.schema, 1);
    assert_eq!(r.dichotomy_exceptions.len(), 1);
}

#[test]
fn explore_writes_round_tripping_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "explore",
        "--p-list",
        "2,3",
        "--d-max",
        "3",
        "--json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(r.schema, 1);
    assert_eq!(r.summary.configs, 2 * (1 + 2 + 3));
    assert_eq!(r.summary.strata, 2 * (2 + 4 + 4 + 8 + 8 + 8));
    assert!(r.all_passed());
    let again: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&r).unwrap(), again);
}

#[test]
fn explore_output_independent_of_jobs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let o = Command::new(env!("CARGO_BIN_EXE_strata-cones"))
        .args([
            "explore",
            "--p-list",
            "3",
            "--d-max",
            "3",
            "--json",
            "-o",
            a.to_str().unwrap(),
        ])
        .env("STRATA_CONES_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "explore",
        "--p-list",
        "3",
        "--d-max",
        "3",
        "--jobs",
        "3",
        "--json",
        "-o",
        b.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn member_inside_and_outside() {
    let o = run(&[
        "member", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "-1,0,0", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["inside"], true);
    assert!(!v["certificate"]["rays"].as_array().unwrap().is_empty());

    let o = run(&[
        "member", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "1,0,0", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["inside"], false);
    assert_eq!(v["violated_form"], serde_json::json!(["-1", "2", "0"]));
    assert_eq!(v["sections_vanish"], true);

    let o = run(&["member", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "1,0,0"]);
    assert!(stdout(&o).contains("violated form -k0 + 2k1 ≥ 0"));
}

#[test]
fn minimal_reports_forced_divisor() {
    let o = run(&[
        "minimal", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "-1,0,0", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["forced_divisors"], serde_json::json!(["0.0"]));
    assert_eq!(v["reduced"], serde_json::json!(["-1", "0"]));

    let o = run(&[
        "minimal", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "-4,0,-1", "--powers", "0.0=1", "--json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["kappa0"], serde_json::json!(["0", "0", "0"]));
    assert_eq!(v["in_minimal"], true);

    let o = run(&[
        "minimal", "--p", "2", "--cycles", "3", "--t", "0.1", "--weight", "0,0,0", "--powers", "0.9=1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gl2_delta_class() {
    let o = run(&["gl2", "--p", "3", "--cycles", "2", "--weight", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4 mod 8"));

    let o = run(&[
        "gl2", "--p", "3", "--cycles", "2", "--weight", "1,1", "--lambda", "5,-2", "--json",
    ]);
    let v = json(&o);
    assert_eq!(v["delta"]["residues"], serde_json::json!(["4"]));
    assert_eq!(v["inside"], true);

    let o = run(&["gl2", "--p", "3", "--cycles", "2", "--weight", "1/2,1"]);
    assert_eq!(o.status.code(), Some(3));
}
