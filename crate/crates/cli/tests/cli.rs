#![allow(clippy::excessive_precision)]

use std::process::{Command, Output};

fn run_with(args: &[&str], env_c: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_rs-velocity"));
    cmd.args(args).env_remove("RS_VELOCITY_C");
    if let Some(c) = env_c {
        cmd.env("RS_VELOCITY_C", c);
    }
    cmd.output().expect("run rs-velocity")
}

fn run(args: &[&str]) -> Output {
    run_with(args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn first_number(o: &Output) -> f64 {
    stdout(o)
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn map_to_unbounded_half() {
    let o = run(&["map", "to-unbounded", "0.5"]);
    assert_eq!(o.status.code(), Some(0));
    let a = first_number(&o);
    assert!((a - 0.54930614433405485).abs() <= 2e-16, "{a}");
}

#[test]
fn map_round_trip_through_text() {
    let o = run(&["map", "to-bounded", "0.5493061443340549"]);
    assert!((first_number(&o) - 0.50000000000000003).abs() <= 2.3e-16);
    let o = run(&["map", "to-bounded", "0"]);
    assert_eq!(stdout(&o), "0.0\n");
    let o = run(&["map", "to-bounded", "-1"]);
    assert!((first_number(&o) + 0.76159415595576489).abs() <= 2e-16);
}

#[test]
fn map_at_light_cone_is_domain_error() {
    let o = run(&["map", "to-unbounded", "1.0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).contains("AtLightCone"), "{}", stderr(&o));
}

#[test]
fn saturation_flag_switches_between_clamp_and_error() {
    let clamped = run(&["map", "to-bounded", "1e6"]);
    assert_eq!(clamped.status.code(), Some(0));
    assert!(first_number(&clamped) < 1.0);
    assert!(stderr(&clamped).contains("clamped"));
    let strict = run(&["--saturation", "error", "map", "to-bounded", "1e6"]);
    assert_eq!(strict.status.code(), Some(2));
    assert!(stderr(&strict).contains("Saturation"));
}

#[test]
fn relative_galilean_def1() {
    let o = run(&[
        "relative",
        "def1",
        "galilean",
        "--body",
        "3,2",
        "--observer",
        "1,2",
    ]);
    assert_eq!(stdout(&o), "1.0 unbounded\n");
}

#[test]
fn relative_einstein_def1() {
    let o = run(&[
        "relative",
        "def1",
        "einstein",
        "--body",
        "1,2",
        "--observer",
        "-1,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "0.8 bounded\n");
}

#[test]
fn relative_def3_limit_on_light_cone_fails() {
    let o = run(&[
        "relative",
        "def3-limit",
        "galilean",
        "--body",
        "1,1",
        "--observer",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("AtLightCone"));
}

#[test]
fn relative_json_carries_claim_and_config() {
    let o = run(&[
        "--format",
        "json",
        "relative",
        "def3-limit",
        "galilean",
        "--body",
        "0.5,1",
        "--observer",
        "-0.5,1",
    ]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["claim_id"], "relativistic-kinematics-def3");
    assert_eq!(doc["representation"], "unbounded");
    assert_eq!(doc["config"]["c"], 1.0);
    assert_eq!(doc["config"]["seed"], 42);
    let v = doc["value"].as_f64().unwrap();
    assert!((v - 1.0986122886681097).abs() <= 4e-16);
}

#[test]
fn relative_csv_has_header() {
    let o = run(&[
        "--format",
        "csv",
        "relative",
        "def1",
        "galilean",
        "--body",
        "3,2",
        "--observer",
        "1,2",
    ]);
    assert_eq!(
        stdout(&o),
        "value,representation,saturated\r\n1.0,unbounded,false\r\n"
    );
}

#[test]
fn convergence_scan_rows_and_order() {
    let o = run(&[
        "scan",
        "convergence",
        "--def",
        "def2",
        "--x",
        "0.5",
        "--t",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.split("\r\n").filter(|l| !l.is_empty()).collect();
    assert_eq!(lines[0], "T,value,abs_error");
    assert_eq!(lines.len(), 6);
    let order: f64 = lines[5]
        .strip_prefix("# fitted_order=")
        .unwrap()
        .parse()
        .unwrap();
    assert!((order - 2.0).abs() <= 0.15);
}

#[test]
fn convergence_scan_with_vanishing_errors_is_degenerate() {
    let o = run(&[
        "scan",
        "convergence",
        "--def",
        "def3",
        "--x",
        "0",
        "--t",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).matches("\r\n").count(), 5);
    assert!(!stdout(&o).contains("fitted_order"));
    assert!(stderr(&o).contains("DegenerateFit"));
}

#[test]
fn convergence_scan_rejects_short_grid() {
    let o = run(&[
        "scan",
        "convergence",
        "--def",
        "def2",
        "--x",
        "0.5",
        "--t",
        "1",
        "--T-grid",
        "1e2,1e3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn light_cone_scan_json() {
    let o = run(&[
        "--format",
        "json",
        "scan",
        "light-cone",
        "--t",
        "1",
        "--eps",
        "1e-2,1e-4,1e-6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(doc["all_pass"], true);
    let last = rows[2]["def3_limit"].as_f64().unwrap();
    assert!((last - 7.2543286192476694).abs() <= 1e-9);
}

#[test]
fn light_cone_scan_rejects_ascending_eps() {
    let o = run(&["scan", "light-cone", "--t", "1", "--eps", "1e-4,1e-2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = run(&["verify", "--seed", "42", "--cases", "500"]);
    let b = run(&["verify", "--seed", "42", "--cases", "500"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).matches("\r\n").count(), 10);
}

#[test]
fn verify_with_impossible_tolerance_fails() {
    let o = run(&["verify", "--tol", "1e-30", "--cases", "200"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("verification failed"));
}

#[test]
fn verify_in_si_units() {
    let o = run(&["--c", "si", "verify", "--seed", "7", "--cases", "2000"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn light_speed_env_fallback_and_flag_precedence() {
    let env = run_with(&["map", "to-bounded", "1"], Some("2"));
    assert!((first_number(&env) - 2.0 * 0.46211715726000976).abs() <= 4e-16);
    let flag = run_with(&["--c", "1", "map", "to-bounded", "1"], Some("2"));
    assert!((first_number(&flag) - 0.76159415595576489).abs() <= 2e-16);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["map", "sideways", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["--c", "-1", "map", "to-bounded", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        run(&[
            "relative",
            "def1",
            "galilean",
            "--body",
            "1",
            "--observer",
            "0,1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
