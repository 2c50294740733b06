use std::io::Write;
use std::process::{Command, Output};

use milnor_cli::expr::{parse_class_expr, ClassExpr};
use milnor_cli::report::Report;
use num_bigint::BigInt;
use proptest::prelude::*;

fn milnor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_milnor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    milnor(args).status.code().expect("exit code")
}

fn json_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&["verify", "--n-max", "1"]), 0);
    assert_eq!(code(&["verify", "--n-max", "2"]), 0);
    assert_eq!(code(&["verify", "--n-max", "0"]), 2);
    assert_eq!(code(&["verify", "--n-max", "7"]), 2);
    assert_eq!(code(&["verify", "--n-max", "9", "--regime", "sampled"]), 2);
    assert_eq!(code(&["verify", "--regime", "numeric"]), 2);
}

#[test]
fn motive_exit_codes() {
    let companion = json_file(r#"{"p": 2, "rows": [[0, 0, 1], [1, 0, 1], [0, 1, 0]]}"#);
    let out = milnor(&["motive", "--matrix", companion.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.results["decomposition"], "M(P^2) ⊕ M(Spec F_8)(1)");
    assert_eq!(report.results["ranks_base"], serde_json::json!([1, 2, 1]));
    assert_eq!(report.results["ranks_split"], serde_json::json!([1, 4, 1]));

    let mixed = json_file(r#"{"p": 2, "rows": [[0, 1, 0], [1, 1, 0], [0, 0, 1]]}"#);
    let out = milnor(&["motive", "--matrix", mixed.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert!(!report.passed);

    let identity = json_file(r#"{"p": 3, "rows": [[1, 0], [0, 1]]}"#);
    assert_eq!(
        code(&["motive", "--matrix", identity.path().to_str().unwrap()]),
        2
    );
    let garbage = json_file("{\"p\": 3");
    assert_eq!(
        code(&["motive", "--matrix", garbage.path().to_str().unwrap()]),
        2
    );
    assert_eq!(code(&["motive", "--matrix", "/nonexistent/matrix.json"]), 2);

    let out = milnor(&["motive", "--etale", "3xC1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.results["ranks_base"], serde_json::json!([1, 4, 1]));
    assert_eq!(code(&["motive", "--etale", "3xC1", "--n", "3"]), 2);
    assert_eq!(code(&["motive", "--etale", "3yC1"]), 2);
    assert_eq!(code(&["motive"]), 2);
}

#[test]
fn pairing_gram_decompose_exit_codes() {
    assert_eq!(code(&["pairing", "--n", "2", "h", "x", "E0"]), 0);
    assert_eq!(code(&["pairing", "--n", "2", "h*"]), 2);
    assert_eq!(code(&["pairing", "--n", "2", "E3"]), 2);
    assert_eq!(code(&["gram", "--n", "3"]), 0);
    assert_eq!(code(&["gram", "--n", "0"]), 2);
    assert_eq!(code(&["decompose", "--n", "2", "x"]), 0);
    assert_eq!(code(&["decompose", "--n", "2", "x^"]), 2);
}

#[test]
fn decompose_reports_the_witness() {
    let out = milnor(&["decompose", "--n", "2", "x"]);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.results["decomposition"], "3*h - E0 - E1 - E2");
}

#[test]
fn reports_round_trip_byte_identical() {
    for args in [
        vec!["verify", "--n-max", "2"],
        vec!["gram", "--n", "2"],
        vec!["pairing", "--n", "3", "h^2", "x*E1"],
        vec!["motive", "--etale", "2xC2"],
    ] {
        let out = milnor(&args);
        let text = String::from_utf8(out.stdout).unwrap();
        let report: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", report.to_json()), text, "{args:?}");
    }
}

#[test]
fn sampled_regime_records_points() {
    let out = milnor(&["pairing", "--n", "6", "--regime", "sampled", "x^5", "h^5"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.regime.kind, "sampled");
    assert!(!report.regime.points.is_empty());
}

#[test]
fn table_format() {
    let out = milnor(&["gram", "--n", "1", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("unimodular"));
    assert!(text.contains("  1 0\n  0 1\n"));
}

fn ast() -> impl Strategy<Value = ClassExpr> {
    let leaf = prop_oneof![
        (0u32..50).prop_map(|v| ClassExpr::Int(BigInt::from(v))),
        Just(ClassExpr::H),
        Just(ClassExpr::X),
        (0usize..12).prop_map(ClassExpr::E),
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ClassExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ClassExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| ClassExpr::Mul(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|a| ClassExpr::Neg(Box::new(a))),
            (inner, 0u32..5).prop_map(|(a, e)| ClassExpr::Pow(Box::new(a), e)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_print(e in ast()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_class_expr(&printed).unwrap(), e, "{}", printed);
    }
}
