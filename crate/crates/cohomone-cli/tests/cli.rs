use std::fs;
use std::process::{Command, Output};

fn cohomone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohomone"))
        .args(args)
        .env("COHOMONE_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn verify_engine_passes_and_detects_fault() {
    let out = cohomone(&["verify-engine"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 4);

    let out = cohomone(&["verify-engine", "--suite", "sphere", "--inject-fault", "shape-sign"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("FAIL sphere"));
}

#[test]
fn verify_engine_single_suite() {
    let out = cohomone(&["verify-engine", "--suite", "closed-form"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("closed-form"));
}

#[test]
fn certify_random_finds_witness() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = cohomone(&["certify", "-n", "4", "-d", "3", "--random", "--seed", "1", "-o", report.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["verdict"], "WITNESS");
    assert!(v["certificate"]["value"].as_f64().unwrap() < -1e-9);
    assert_eq!(v["config"]["subcommand"], "certify");
    assert_eq!(v["config"]["seed"], 1);
    assert!(v["tolerances"]["inequality"].as_f64().is_some());
}

#[test]
fn certify_controls_exit_zero() {
    for args in [["--preset", "round", "-n", "4"], ["--preset", "stiefel", "-n", "5"]] {
        let mut all = vec!["certify"];
        all.extend(args);
        let out = cohomone(&all);
        assert_eq!(code(&out), 0, "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["verdict"], "NONE");
    }
}

#[test]
fn preset_pipeline_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let profile = dir.path().join("round.json");
    let p = profile.to_str().unwrap();
    assert_eq!(code(&cohomone(&["preset", "round", "-n", "4", "-o", p])), 0);
    let report = dir.path().join("report.json");
    let r = report.to_str().unwrap();
    assert_eq!(code(&cohomone(&["certify", "--profile", p, "-o", r])), 0);
    let first = fs::read(&report).unwrap();
    assert_eq!(code(&cohomone(&["certify", "--profile", p, "-o", r])), 0);
    assert_eq!(first, fs::read(&report).unwrap());
}

#[test]
fn witness_reports_are_byte_identical() {
    let run = || cohomone(&["certify", "-n", "5", "-d", "4", "--random", "--seed", "3", "--exhaustive"]).stdout;
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["certify", "-n", "4", "-d", "5", "--random", "--seed", "7", "--exhaustive"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cohomone"))
            .args(args)
            .env("COHOMONE_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn malformed_profile_is_an_error_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\n  \"family\": \"brieskorn\",\n  \"n\": 4,\n  \"d\": \n}").unwrap();
    let out = cohomone(&["certify", "--profile", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn class_one_exit_codes() {
    let out = cohomone(&["class-one", "-l", "3", "-m", "2", "-N", "7"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("k = 5"));
    let json = &text[text.find('{').unwrap()..];
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    assert_eq!(v["bound"]["verdict"], "CONTRADICTION");

    let out = cohomone(&["class-one", "-l", "3", "-m", "1", "-N", "5"]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8(out.stderr).unwrap().contains("b"));

    let out = cohomone(&["class-one", "-l", "4", "-m", "2", "-N", "11"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("k = 9"));
}

#[test]
fn delta_trace_has_header_and_one_row_per_point() {
    let out = cohomone(&["trace", "--preset", "round", "-n", "4", "--grid", "50"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,delta,delta_prime"));
    assert_eq!(lines.count(), 51);
}

#[test]
fn curvature_trace_columns() {
    let out = cohomone(&["trace", "--kind", "curvature", "-n", "4", "-d", "3", "--random", "--seed", "2", "--grid", "10"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("t,plane,sectional,residual"));
    let rows: Vec<&str> = rows.collect();
    assert_eq!(rows.len(), 9 * 5);
    for r in rows {
        let cols: Vec<&str> = r.split(',').collect();
        let residual: f64 = cols[3].parse().unwrap();
        assert!(residual.abs() < 1e-8, "{r}");
    }
}

#[test]
fn unwritable_output_is_an_error() {
    let out = cohomone(&["preset", "round", "-n", "4", "-o", "/nonexistent-dir/x.json"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_cohomone"))
        .args(["preset", "round", "-n", "4"])
        .env("COHOMONE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
}
