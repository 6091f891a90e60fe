//! End-to-end exit-code and output contract for the binary.

use std::process::{Command, Output};

use lattice_walks::envelope::{counts_from_json, ResultEnvelope, CACHE_ENV};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-walks"))
        .args(args)
        .env_remove(CACHE_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn area_csv() {
    let out = run(&["area", "--n", "4", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0,28\n1,4\n");
}

#[test]
fn area_table_default() {
    let out = run(&["area", "--n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("0  4"));
}

#[test]
fn area_json_round_trips() {
    let out = run(&["area", "--n", "6", "--format", "json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(
        value,
        serde_json::json!({"0": "232", "1": "72", "2": "12"})
    );
    let counts = counts_from_json(&value).unwrap();
    assert_eq!(counts[&2], 12.into());
}

#[test]
fn area_rejects_bad_n() {
    assert_eq!(run(&["area", "--n", "5"]).status.code(), Some(2));
    assert_eq!(run(&["area", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["area", "--n", "22"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "--n-max", "6"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "--n-max", "9"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--n-max", "16"]).status.code(), Some(2));
}

#[test]
fn kreft_modes_and_guards() {
    let out = run(&["kreft", "--p", "1", "--q", "5", "--j", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "10");

    let out = run(&["kreft", "--p", "1", "--q", "3", "--j", "2", "--mode", "extrapolated"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");

    let out = run(&["kreft", "--p", "1", "--q", "1", "--j", "2", "--mode", "series"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "7");

    // direct form outside its regime, non-coprime flux
    assert_eq!(
        run(&["kreft", "--p", "1", "--q", "3", "--j", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["kreft", "--p", "2", "--q", "4", "--j", "1"]).status.code(),
        Some(2)
    );

    let out = run(&["kreft", "--p", "1", "--q", "5", "--j", "2", "--all"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("max relative deviation"));
}

#[test]
fn trace_values() {
    let out = run(&["trace", "--n", "4", "--p", "0", "--q", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "36");

    let out = run(&["trace", "--n", "2", "--p", "1", "--q", "7"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "4");

    let out = run(&["trace", "--n", "4", "--p", "1", "--q", "2", "--method", "all"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("trace-matrix     20"), "{text}");

    assert_eq!(
        run(&["trace", "--n", "3", "--p", "1", "--q", "2"]).status.code(),
        Some(2)
    );
}

#[test]
fn lambda_table_totals() {
    let out = run(&["lambda", "--n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    // grand total in the bottom-right corner
    let last = text.lines().last().unwrap();
    assert!(last.ends_with("36"), "{text}");
    assert!(text.contains("6"), "{text}");

    assert_eq!(run(&["lambda", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn unknown_arguments_exit_2() {
    assert_eq!(run(&["area", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("cache.jsonl");
    let run_cached = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_lattice-walks"))
            .args(args)
            .env(CACHE_ENV, &cache_path)
            .output()
            .unwrap()
    };
    let first = run_cached(&["area", "--n", "8", "--format", "csv"]);
    assert!(first.status.success());
    // cached rerun produces identical stdout and reports the hit
    let second = run_cached(&["area", "--n", "8", "--format", "csv"]);
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));

    // every cache line is a valid, losslessly round-tripping envelope
    let text = std::fs::read_to_string(&cache_path).unwrap();
    let mut lines = 0;
    for line in text.lines() {
        let envelope = ResultEnvelope::from_json(line).unwrap();
        assert_eq!(
            envelope,
            ResultEnvelope::from_json(&envelope.to_json()).unwrap()
        );
        assert_eq!(envelope.command, "area");
        assert!(counts_from_json(&envelope.payload).is_some());
        lines += 1;
    }
    assert_eq!(lines, 1);
}
