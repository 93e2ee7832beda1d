use std::process::Command;

use diagram_growth::cli::{OutputRecord, CSV_HEADER};
use proptest::prelude::*;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_diagram-growth"))
        .args(args)
        .env_remove("GROWTH_MAX_N")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn reserialize(text: &str) -> String {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<OutputRecord> = r.deserialize().map(|x| x.unwrap()).collect();
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[test]
fn seq_symmetric() {
    let (code, out, _) = bin(&["seq", "symmetric", "--n-max", "4"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], CSV_HEADER);
    let b: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(3).unwrap()).collect();
    assert_eq!(b, ["1", "1", "2", "4", "10"]);
}

#[test]
fn exact_values_never_in_scientific_notation() {
    let (_, out, _) = bin(&["seq", "brauer", "--n-max", "300"]);
    let last = out.lines().last().unwrap();
    let b_n = last.split(',').nth(3).unwrap();
    assert!(b_n.len() > 300 && b_n.bytes().all(|c| c.is_ascii_digit()));
}

#[test]
fn csv_round_trip_is_byte_identical() {
    for args in [
        &["seq", "cob", "--k", "3", "--n-max", "12"][..],
        &["asympt", "brauer", "--ns", "100,1000,10000"][..],
        &["asympt", "glfq", "--q", "3", "--ns", "10,20"][..],
        &["asympt", "cob", "--k", "2", "--ns", "50,9000"][..],
    ] {
        let (code, out, _) = bin(args);
        assert_eq!(code, 0);
        assert_eq!(reserialize(&out), out, "{args:?}");
    }
}

#[test]
fn asympt_examples() {
    let (_, out, _) = bin(&["asympt", "brauer", "--ns", "100,1000,10000"]);
    let mut r = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<OutputRecord> = r.deserialize().map(|x| x.unwrap()).collect();
    let errs: Vec<f64> = rows.iter().map(|r| (r.ratio.unwrap() - 1.0).abs()).collect();
    assert!(errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 0.005, "{errs:?}");

    let (_, out, _) = bin(&["asympt", "glfq", "--q", "3", "--ns", "10,20", "--format", "json"]);
    let rows: Vec<OutputRecord> = serde_json::from_str(&out).unwrap();
    for r in rows {
        assert!((r.ratio.unwrap() - 1.0).abs() < 1e-4);
    }
}

#[test]
fn max_n_env_lowers_guards() {
    let out = Command::new(env!("CARGO_BIN_EXE_diagram-growth"))
        .args(["seq", "brauer", "--n-max", "20"])
        .env("GROWTH_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the guard 10"));
}

#[test]
fn verify_exit_code_reflects_failures() {
    for suite in ["oriented", "lambertw", "glfq-identity", "convergence"] {
        let (code, out, _) = bin(&["verify", suite]);
        let any_failed = out.lines().skip(1).any(|l| l.contains(",false,"));
        assert_eq!(code, if any_failed { 1 } else { 0 }, "{suite}\n{out}");
    }
    assert_eq!(bin(&["verify", "oriented"]).0, 0);
    assert_eq!(bin(&["verify", "bogus"]).0, 2);
}

#[test]
fn unknown_family_is_usage_error() {
    let (code, out, err) = bin(&["seq", "spider"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("spider"));
}

fn finite_opt() -> impl Strategy<Value = Option<f64>> {
    proptest::option::of(prop_oneof![any::<f64>().prop_filter("finite", |x| x.is_finite()), -1e6f64..1e6])
}

proptest! {
    #[test]
    fn arbitrary_records_round_trip(
        family in "[a-z-]{1,16}",
        param in "(k=[0-9]{1,3})?",
        n in 0usize..100000,
        b_n in "[0-9]{0,80}",
        log_b_n in finite_opt(),
        estimate_log in finite_opt(),
        ratio in finite_opt(),
        root_ratio in finite_opt(),
        provenance in "(closed-form|egf|oracle|error)",
    ) {
        let rec = OutputRecord { family, param, n, b_n, log_b_n, estimate_log, ratio, root_ratio, provenance };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(&rec).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        prop_assert_eq!(reserialize(&text), text);
    }
}
