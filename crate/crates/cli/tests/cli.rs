//! End-to-end behaviour of the `laakso` binary: encodings, exit codes and reproducibility.

use std::process::{Command, Output};

use serde_json::Value;

fn laakso(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_laakso"))
        .args(args)
        .env_remove("LAAKSO_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = laakso(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn spectrum_csv_and_json_encode_the_same_lines() {
    let base = [
        "spectrum",
        "--kind",
        "square-well",
        "--j",
        "2,3",
        "--periodic",
        "--lambda-max",
        "2000",
    ];
    let doc = json(&base);
    let csv_out = laakso(&[&base[..], &["--format", "csv"]].concat());
    assert!(csv_out.status.success());
    let mut reader = csv::Reader::from_reader(&csv_out.stdout[..]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let lines = doc["lines"].as_array().unwrap();
    assert_eq!(rows.len(), lines.len());
    for (row, line) in rows.iter().zip(lines) {
        assert_eq!(row[0].parse::<f64>().unwrap(), line["lambda"].as_f64().unwrap());
        assert_eq!(
            row[1].parse::<u64>().unwrap(),
            line["multiplicity"].as_u64().unwrap()
        );
        let sources: Vec<String> = line["sources"]
            .as_array()
            .unwrap()
            .iter()
            .map(|s| format!("{}:{}:{}", s["family"].as_str().unwrap(), s["n"], s["k"]))
            .collect();
        assert_eq!(row[2], sources.join(";"));
    }
}

#[test]
fn describe_reports_both_dimensions() {
    let doc = json(&["describe", "--j", "2,3", "--periodic"]);
    let h = doc["hausdorff_dimension"].as_f64().unwrap();
    let d = doc["spectral_dimension"].as_f64().unwrap();
    assert!((h - 1.77371).abs() < 1e-5);
    assert!((d - 24f64.ln() / 6f64.ln()).abs() < 1e-14);
}

#[test]
fn zeta_minus_half_for_constant_two() {
    let doc = json(&["zeta", "--j", "2", "--s", "-0.5"]);
    let v = doc["value"][0].as_f64().unwrap();
    assert!((v + 5.0 * std::f64::consts::PI / 28.0).abs() < 1e-12);
    assert_eq!(doc["mode"], "continued");
}

#[test]
fn validation_failures_exit_two_with_a_record() {
    for args in [
        &["spectrum", "--j", "1,3", "--lambda-max", "10"][..],
        &["spectrum", "--j", "2", "--lambda-max", "-1"],
        &["solve", "--j", "2", "--n", "1", "--mesh", "1"],
        &["casimir", "--plates", "4,1"],
        &["casimir", "--plates", "4,1,0.7"],
        &["zeta", "--j", "2", "--s", "1"],
        &["census", "--n", "2"],
        &["frobnicate"],
    ] {
        let out = laakso(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let record: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(record["error"]["exit_code"], 2);
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn solver_failure_exits_three() {
    let out = laakso(&[
        "solve",
        "--j",
        "2,3",
        "--periodic",
        "--n",
        "3",
        "--count",
        "5",
        "--tolerance",
        "1e-30",
    ]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let record: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(record["error"]["kind"], "solver-failure");
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_laakso"))
        .args(["zeta", "--j", "3", "--s", "2"])
        .env("LAAKSO_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_laakso"))
        .args(["zeta", "--j", "3", "--s", "2"])
        .env("LAAKSO_THREADS", "1")
        .output()
        .unwrap();
    assert!(ok.status.success());
}

#[test]
fn output_files_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("census.json");
    let args = [
        "census",
        "--j",
        "3",
        "--periodic",
        "--n",
        "3",
        "--region",
        "square-well",
    ];
    let direct = laakso(&args);
    let to_file = laakso(&[&args[..], &["--output", path.to_str().unwrap()]].concat());
    assert!(to_file.status.success() && to_file.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
    let doc: Value = serde_json::from_slice(&direct.stdout).unwrap();
    assert_eq!(doc["agree"], true);
}

#[test]
fn solve_writes_trace_and_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("trace.csv");
    let matrix = dir.path().join("h.mtx");
    let doc = json(&[
        "solve",
        "--j",
        "2",
        "--periodic",
        "--n",
        "2",
        "--potential",
        "coulomb",
        "--count",
        "2",
        "--trace",
        "0",
        "--trace-output",
        trace.to_str().unwrap(),
        "--matrix-output",
        matrix.to_str().unwrap(),
    ]);
    assert!(doc["eigenvalues"][0].as_f64().unwrap() < 0.0);
    let mut reader = csv::Reader::from_path(&trace).unwrap();
    assert_eq!(reader.headers().unwrap(), vec!["x", "row", "value"]);
    assert!(reader.records().count() > 10);
    let header = std::fs::read_to_string(&matrix).unwrap();
    let dim = doc["metadata"]["dimension"].as_u64().unwrap();
    assert!(header.starts_with(&format!("% {dim} {dim} ")));
}
