use std::io::Write;
use std::process::{Command, Output};

use coxeter_core::partition::partitions_by_length;
use coxeter_core::realize::representative_quivers;
use coxeter_core::Quiver;
use serde_json::Value;
use tempfile::NamedTempFile;

fn coxeter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxeter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn temp_json(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn quiver_file(q: &Quiver) -> NamedTempFile {
    temp_json(&serde_json::to_string(q).unwrap())
}

#[test]
fn from_poly_inverts_cox_poly_on_representatives() {
    for m in 2..=5 {
        for len in 1..=m {
            for pi in partitions_by_length(m, len) {
                for d in 0..=1 {
                    let q = representative_quivers(&pi, d).unwrap().linear;
                    let c = len - 1 + 2 * d;
                    let file = quiver_file(&q);
                    let path = file.path().to_str().unwrap();
                    let poly = stdout_json(&coxeter(&["cox-poly", "--quiver", path]));
                    let dense: Vec<String> = poly["dense"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    let back = stdout_json(&coxeter(&[
                        "from-poly",
                        "--poly",
                        &dense.join(","),
                        "--c",
                        &c.to_string(),
                    ]));
                    let parts: Vec<usize> = pi.parts().to_vec();
                    assert_eq!(back, serde_json::json!(parts), "{pi}, d = {d}");
                    let direct = stdout_json(&coxeter(&["cycle-type", "--quiver", path]));
                    assert_eq!(direct, back);
                }
            }
        }
    }
}

#[test]
fn invariants_of_the_kronecker_quiver() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/kronecker.json");
    let inv = stdout_json(&coxeter(&["invariants", "--quiver", path]));
    assert_eq!(inv["cycle_type"], serde_json::json!([1, 1]));
    assert_eq!(inv["corank"], 1);
    assert_eq!(inv["coxeter_number"], Value::Null);
    assert_eq!(inv["reduced_coxeter_number"], 1);
    let inverse = stdout_json(&coxeter(&["inverse", "--quiver", path]));
    assert_eq!(inverse["arrows"], serde_json::json!([[1, 2], [2, 1]]));
}

#[test]
fn realized_quiver_has_the_input_form() {
    let form = temp_json(r#"{"n":3,"upper":[[1,2,-1],[2,3,-1],[1,3,1]]}"#);
    let path = form.path().to_str().unwrap();
    let res = stdout_json(&coxeter(&["realize", "--form", path]));
    let q: Quiver = serde_json::from_value(res["quiver"].clone()).unwrap();
    let again = quiver_file(&q);
    let direct = stdout_json(&coxeter(&["cycle-type", "--form", path]));
    let via_quiver = stdout_json(&coxeter(&[
        "cycle-type",
        "--quiver",
        again.path().to_str().unwrap(),
    ]));
    assert_eq!(direct, via_quiver);
}

#[test]
fn representative_accepts_corank() {
    let by_c = stdout_json(&coxeter(&["representative", "--pi", "3,2,2", "--c", "4"]));
    let by_d = stdout_json(&coxeter(&["representative", "--pi", "3,2,2", "--d", "1"]));
    assert_eq!(by_c, by_d);
    assert_eq!(by_c["linear"]["arrows"].as_array().unwrap().len(), 10);
}

#[test]
fn table_format_prints_infinity() {
    let out = coxeter(&["enumerate", "--n", "5", "--c", "2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Partition"));
    assert!(text.contains('∞'));
}

#[test]
fn exit_codes() {
    // domain error
    let indefinite = temp_json(r#"{"n":2,"upper":[[1,2,-3]]}"#);
    let out = coxeter(&["invariants", "--form", indefinite.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let out = coxeter(&["cox-poly", "--pi", "3,2,2", "--c", "1"]);
    assert_eq!(out.status.code(), Some(1));

    // usage and input errors
    assert_eq!(coxeter(&["enumerate"]).status.code(), Some(2));
    assert_eq!(coxeter(&["no-such-verb"]).status.code(), Some(2));
    let broken = temp_json(r#"{"vertices": 2, "arrows": [[1, 2]"#);
    let out = coxeter(&["invariants", "--quiver", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1 column"));
    let out = coxeter(&["invariants", "--quiver", "/nonexistent/quiver.json"]);
    assert_eq!(out.status.code(), Some(2));
    let looped = temp_json(r#"{"vertices": 2, "arrows": [[1, 1]]}"#);
    let out = coxeter(&["inverse", "--quiver", looped.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_reports_a_clean_small_sweep() {
    let report = stdout_json(&coxeter(&[
        "verify",
        "--max-vertices",
        "3",
        "--max-arrows",
        "4",
    ]));
    assert_eq!(report["failures"], serde_json::json!({}));
    assert!(report["quivers"].as_u64().unwrap() > 0);
}
