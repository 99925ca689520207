//! CLI behavior: golden outputs, exit codes, format gating, file output.

mod common;
use common::{assert_golden, run};

#[test]
fn golden_basis_d3_a1() {
    let (code, out, _) = run(&["basis", "--d", "3", "--a", "1"]);
    assert_eq!(code, 0);
    assert_golden("basis_d3_a1.json", &out);
}

#[test]
fn golden_basis_d2_a0() {
    let (code, out, _) = run(&["basis", "--d", "2", "--a", "0"]);
    assert_eq!(code, 0);
    assert_golden("basis_d2_a0.json", &out);
}

#[test]
fn golden_pauli_d3_xz() {
    let (code, out, _) = run(&["pauli", "--d", "3", "--a", "1", "--b", "1"]);
    assert_eq!(code, 0);
    assert_golden("pauli_d3_a1_b1.json", &out);
}

#[test]
fn golden_mub_d2() {
    let (code, out, _) = run(&["mub", "--d", "2"]);
    assert_eq!(code, 0);
    assert_golden("mub_d2.json", &out);
}

#[test]
fn golden_group_d2_cayley_csv() {
    let (code, out, _) = run(&["group", "--d", "2", "--cayley", "--format", "csv"]);
    assert_eq!(code, 0);
    // 8 elements: header line plus 8 table rows
    assert_eq!(out.lines().count(), 9);
    assert_golden("group_d2_cayley.csv", &out);
}

#[test]
fn golden_ring_benzene() {
    let (code, out, _) = run(&["ring", "--N", "6"]);
    assert_eq!(code, 0);
    assert_golden("ring_n6.json", &out);
}

#[test]
fn basis_d1_single_vector() {
    let (code, out, _) = run(&["basis", "--d", "1", "--a", "0"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["vectors"].as_array().unwrap().len(), 1);
}

#[test]
fn mub_counts_and_exit_codes() {
    let (code, out, _) = run(&["mub", "--d", "5"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["bases"].as_array().unwrap().len(), 6);
    assert_eq!(parsed["certificate"]["pass"], serde_json::Value::Bool(true));

    let (code, out, _) = run(&["mub", "--d", "4"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["bases"].as_array().unwrap().len(), 5);

    // out-of-scope dimension: explanatory message, exit 2
    let (code, _, err) = run(&["mub", "--d", "6"]);
    assert_eq!(code, 2);
    assert!(err.contains("unsupported"));
}

#[test]
fn group_d2_has_eight_elements() {
    let (code, out, _) = run(&["group", "--d", "2"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["order"], serde_json::json!(8));
    assert_eq!(parsed["elements"].as_array().unwrap().len(), 8);
}

#[test]
fn cayley_gate_rejects_large_dimension() {
    let (code, _, err) = run(&["group", "--d", "4", "--cayley"]);
    assert_eq!(code, 2);
    assert!(err.contains("d <= 3"));
}

#[test]
fn verify_small_sweep_passes() {
    let (code, out, _) = run(&["verify", "--d-max", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("summary"));
    assert!(!out.contains("FAIL"));

    let (code, out, _) = run(&["verify", "--d-max", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["passed"], serde_json::Value::Bool(true));
}

#[test]
fn verify_default_sweep_passes() {
    // the default cap (7) runs every check in well under a second
    let (code, out, _) = run(&["verify"]);
    assert_eq!(code, 0);
    assert!(out
        .lines()
        .last()
        .unwrap()
        .contains("12 of 12 checks passed"));
}

#[test]
fn exact_mode_rejects_non_rational_r() {
    let (code, _, err) = run(&["basis", "--d", "3", "--a", "1", "--r", "0.1e-4"]);
    assert_eq!(code, 2);
    assert!(err.contains("approximate mode") || err.contains("exact"));
    // the same r is accepted in approximate mode
    let (code, _, _) = run(&[
        "basis", "--d", "3", "--a", "1", "--r", "0.1e-4", "--mode", "approx",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn exact_mode_accepts_rational_and_decimal_r() {
    for r in ["1/2", "0.5", "-3/4", "2"] {
        let (code, _, err) = run(&["basis", "--d", "3", "--a", "0", "--r", r]);
        assert_eq!(code, 0, "r={r} rejected: {err}");
    }
}

#[test]
fn approx_mode_rejects_non_finite_r() {
    let (code, _, err) = run(&[
        "basis", "--d", "3", "--a", "1", "--r", "inf", "--mode", "approx",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("finite"));
}

#[test]
fn csv_requires_approximate_amplitudes() {
    let (code, _, err) = run(&["basis", "--d", "2", "--a", "0", "--format", "csv"]);
    assert_eq!(code, 2);
    assert!(err.contains("approx"));

    let (code, out, _) = run(&[
        "basis", "--d", "2", "--a", "0", "--format", "csv", "--mode", "approx",
    ]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("tag,vector,component,re,im"));
    assert_eq!(out.lines().count(), 5);
}

#[test]
fn ring_csv_has_site_rows() {
    let (code, out, _) = run(&["ring", "--N", "4", "--mode", "approx", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 17);
    assert!(out.starts_with("orbital,site,re,im\n"));
}

#[test]
fn tolerance_is_validated_in_approx_mode() {
    let (code, _, err) = run(&["ring", "--N", "3", "--mode", "approx", "--tolerance", "-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("tolerance"));
    // exact mode ignores the tolerance entirely
    let (code, _, _) = run(&["ring", "--N", "3", "--tolerance", "-1"]);
    assert_eq!(code, 0);
}

#[test]
fn invalid_operator_index_is_rejected() {
    let (code, _, _) = run(&["basis", "--d", "3", "--a", "7"]);
    assert_eq!(code, 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.json");
    let (code, out, _) = run(&[
        "basis",
        "--d",
        "2",
        "--a",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let (_, direct, _) = run(&["basis", "--d", "2", "--a", "1"]);
    assert_eq!(written, direct);
}

#[test]
fn approx_pauli_matches_exact_numerically() {
    let (code, out, _) = run(&[
        "pauli", "--d", "3", "--a", "1", "--b", "1", "--mode", "approx",
    ]);
    assert_eq!(code, 0);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["mode"], "approx");
    // entry (0,1) is q = exp(2 pi i/3)
    let entry = &parsed["entries"][0][1];
    let re = entry[0].as_f64().unwrap();
    let im = entry[1].as_f64().unwrap();
    assert!((re - (-0.5)).abs() < 1e-12);
    assert!((im - 0.75f64.sqrt()).abs() < 1e-12);
}
