//! End-to-end checks of the binary: exit codes, output round-trips, and
//! byte-level determinism across repeated runs and thread counts.

use std::process::Command;

fn banachlab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_banachlab"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = banachlab().args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn radius_of_identity_exits_zero() {
    let (stdout, _, code) = run(&[
        "radius",
        "--inline",
        r#"{"space": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
            "matrix": [[1,0,0],[0,1,0],[0,0,1]]}"#,
        "--seed",
        "7",
        "--budget",
        "12",
        "--format",
        "json",
        "--deterministic",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json output");
    assert!((v["result"]["radius"]["lower"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn usage_errors_exit_one() {
    let (_, stderr, code) = run(&["radius", "--inline", "{not json", "--deterministic"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("error"));
    let (_, _, code) = run(&["radius", "--deterministic"]);
    assert_eq!(code, 1); // missing space and matrix
}

#[test]
fn opening_convention_prints_one_and_exits_zero() {
    let (stdout, _, code) = run(&[
        "opening",
        "--inline",
        r#"{"y": {"ambient": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
                  "basis": [[1,0,0]]},
            "z": {"ambient": {"kind": "lp", "p": 2.0, "dim": 3, "field": "real"},
                  "basis": [[1,0,0],[0,1,0]]}}"#,
        "--format",
        "csv",
        "--deterministic",
    ]);
    assert_eq!(code, 0);
    let data_line = stdout.lines().nth(2).expect("header + row");
    assert_eq!(data_line, "opening,1,1,true,0");
}

#[test]
fn verify_all_is_byte_deterministic() {
    let args = [
        "verify-all",
        "--seed",
        "7",
        "--deterministic",
        "--inline",
        r#"{"scale": 0.02}"#,
        "--format",
        "json",
    ];
    let (first, _, code1) = run(&args);
    let (second, _, code2) = run(&args);
    assert_eq!(code1, 0, "{first}");
    assert_eq!(code2, 0);
    assert_eq!(first, second, "repeated deterministic runs differ");

    // Thread count must not change any numeric output.
    let mut with_one: Vec<&str> = args.to_vec();
    with_one.extend(["--threads", "1"]);
    let mut with_four: Vec<&str> = args.to_vec();
    with_four.extend(["--threads", "4"]);
    let (one, _, _) = run(&with_one);
    let (four, _, _) = run(&with_four);
    assert_eq!(one, four, "thread count changed the output");
    assert_eq!(one, first, "threaded output differs from default-pool output");
}

#[test]
fn json_and_csv_outputs_round_trip() {
    let args = [
        "converge",
        "--inline",
        r#"{"space": {"kind": "lp", "p": 1.0, "dim": 3, "field": "real"},
            "subspace": {"basis": [[1,0,0],[0,1,0]]},
            "family": {"kind": "shear", "from": 0, "to": 2},
            "steps": [5, 10]}"#,
        "--budget",
        "8",
        "--deterministic",
    ];
    let mut json_args: Vec<&str> = args.to_vec();
    json_args.extend(["--format", "json"]);
    let (json_out, _, code) = run(&json_args);
    assert_eq!(code, 0, "{json_out}");
    let reparsed: serde_json::Value = serde_json::from_str(&json_out).expect("valid json");
    assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), json_out.trim_end());

    let mut csv_args: Vec<&str> = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let (csv_out, _, code) = run(&csv_args);
    assert_eq!(code, 0);
    let header = csv_out.lines().find(|l| !l.starts_with('#')).expect("header line");
    assert_eq!(
        header,
        "n,eta,index_lower,index_upper,sandwich_lower,sandwich_upper,inside,gap_lower,opening_upper"
    );
    // re-parse and re-emit is byte-identical
    let rebuilt: String = csv_out
        .lines()
        .map(|l| {
            if l.starts_with('#') {
                format!("{l}\n")
            } else {
                format!("{}\n", l.split(',').collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    assert_eq!(rebuilt, csv_out);
}

#[test]
fn config_file_input_works() {
    let dir = std::env::temp_dir().join("banachlab_cli_test");
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("gap.json");
    std::fs::write(
        &path,
        r#"{"y": {"ambient": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"}, "basis": [[1,0]]},
            "z": {"ambient": {"kind": "lp", "p": 2.0, "dim": 2, "field": "real"}, "basis": [[0,1]]}}"#,
    )
    .expect("config written");
    let (stdout, _, code) = run(&[
        "gap",
        "--config",
        path.to_str().expect("utf8 path"),
        "--format",
        "json",
        "--deterministic",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json output");
    assert!((v["result"]["gap"]["upper"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-6);
    // missing file is a usage error
    let (_, _, code) = run(&["gap", "--config", "/nonexistent/x.json"]);
    assert_eq!(code, 1);
}

#[test]
fn bpb_cli_reports_converged_correction() {
    let (stdout, _, code) = run(&[
        "bpb",
        "--inline",
        r#"{"space": {"kind": "lp", "p": 1.0, "dim": 2, "field": "real"},
            "u": [0.98, 0.0], "u_star": [1.0, 0.5], "epsilon": 0.5}"#,
        "--format",
        "json",
        "--deterministic",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json output");
    assert_eq!(v["result"]["status"], "converged");
    assert!(v["result"]["primal_distance"].as_f64().unwrap() < 0.5);
    assert!(v["result"]["dual_distance"].as_f64().unwrap() < 0.5);
}
