use std::process::{Command, Output};

use serde_json::Value;

fn bisets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const DIAGONAL: [&str; 11] = [
    "verify", "--k", "C2", "--h", "C2", "--g", "C2", "--y", "diag", "--x", "diag",
];

#[test]
fn verify_diagonal_passes() {
    let mut args = DIAGONAL.to_vec();
    args.extend(["--mode", "all"]);
    let out = bisets(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schema"], "bisets.verification-report/v1");
    assert_eq!(r["dims"]["lhs"], 2);
    assert_eq!(r["dims"]["rhs"], 2);
    assert_eq!(r["passed"], true);
    for v in ["char", "constructive", "chain"] {
        assert_eq!(r["verdicts"][v]["status"], "pass", "{v}");
    }
}

#[test]
fn malformed_group_is_a_usage_error() {
    let out = bisets(&[
        "verify", "--k", "C", "--h", "C2", "--g", "C2", "--y", "whole", "--x", "whole",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("C"));
}

#[test]
fn missing_flags_and_bad_values_are_usage_errors() {
    assert_eq!(bisets(&["verify", "--k", "C2"]).status.code(), Some(2));
    let mut args = DIAGONAL.to_vec();
    args.extend(["--field", "F4"]);
    assert_eq!(bisets(&args).status.code(), Some(2));
    let mut args = DIAGONAL.to_vec();
    args.extend(["--mode", "fast"]);
    assert_eq!(bisets(&args).status.code(), Some(2));
    let mut args = DIAGONAL.to_vec();
    args.extend(["--max-index", "1"]);
    assert_eq!(bisets(&args).status.code(), Some(2));
    assert_eq!(bisets(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn corrupted_action_table_exits_one() {
    let mut args = DIAGONAL.to_vec();
    args.extend(["--corrupt", "biset-action"]);
    let out = bisets(&args);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["passed"], false);
    assert_ne!(r["verdicts"]["structure"]["status"], "pass");
}

#[test]
fn verify_writes_report_to_out_dir() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = DIAGONAL.to_vec();
    let d = dir.path().to_str().unwrap().to_string();
    args.extend(["--out-dir", &d]);
    let out = bisets(&args);
    let written: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(written, json(&out));
}

#[test]
fn modular_verify_uses_constructive_evidence() {
    let out = bisets(&[
        "verify",
        "--k",
        "C1",
        "--h",
        "S3",
        "--g",
        "C2",
        "--y",
        "[(e,(12))]",
        "--x",
        "whole",
        "--n",
        "trivial",
        "--m",
        "sign",
        "--field",
        "F3",
        "--mode",
        "char,constructive",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["verdicts"]["char"]["status"], "skipped");
    assert_eq!(r["verdicts"]["constructive"]["status"], "pass");
}

#[test]
fn sweep_c2_trivial_modules() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let out = bisets(&[
        "sweep",
        "--groups",
        "C2",
        "--modules",
        "trivial",
        "--out-dir",
        d,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out);
    assert_eq!(s["schema"], "bisets.sweep-summary/v1");
    assert_eq!(s["cases_run"], 25);
    assert_eq!(s["passed"], 25);
    assert_eq!(
        std::fs::read_dir(dir.path().join("cases")).unwrap().count(),
        25
    );
    let first: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("cases/000000.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(first["passed"], true);
}

#[test]
fn sweep_empty_group_list() {
    let out = bisets(&["sweep"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cases_run"], 0);
}

#[test]
fn sweep_is_byte_identical_on_rerun() {
    let args = [
        "sweep",
        "--groups",
        "C2,C3",
        "--max-order",
        "2",
        "--seed",
        "7",
        "--constructive-every",
        "4",
    ];
    let (a, b) = (bisets(&args), bisets(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sweep_rejects_zero_caps() {
    assert_eq!(
        bisets(&["sweep", "--groups", "C2", "--dim-cap", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        bisets(&["sweep", "--groups", "C2", "--case-cap", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn inspect_dumps() {
    let g = json(&bisets(&["inspect", "group", "S3"]));
    assert_eq!(g["order"], 6);
    assert_eq!(g["table"].as_array().unwrap().len(), 6);
    assert_eq!(g["classes"].as_array().unwrap().len(), 3);

    let s = json(&bisets(&["inspect", "subgroup", "C2", "C2", "diag"]));
    assert_eq!(s["p1"].as_array().unwrap().len(), 2);
    assert_eq!(s["k1"].as_array().unwrap().len(), 1);

    let b = json(&bisets(&[
        "inspect",
        "biset",
        "C1",
        "S3",
        "C1",
        "[(e,(12))]",
        "[((12),e)]",
    ]));
    assert_eq!(b["double_coset_reps"].as_array().unwrap().len(), 2);
    assert_eq!(b["orbits_match_double_cosets"], true);

    let m = json(&bisets(&["inspect", "module", "S3", "perm"]));
    assert_eq!(m["character"][0], "3");
}
