use std::process::Command;
use std::time::{Duration, Instant};

use ktwist_cli::{check, main_with, JobSpec};
use ktwist_core::FusionTable;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with(std::iter::once("ktwist").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn basis_json() {
    let r = run(&["basis", "--type", "A1", "--level", "3", "--format", "json"]);
    assert_eq!(r.code, 0);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["basis"], serde_json::json!([[1], [2]]));
}

#[test]
fn missing_identity_is_a_domain_error() {
    let r = run(&["identity", "--type", "A1", "--level", "1"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.stderr.trim_end(), "NoIdentity: rho is singular at level 1");
    assert!(r.stdout.is_empty());
}

#[test]
fn level_from_adjoint_representation() {
    let from_rep = run(&["fusion-table", "--type", "A1", "--rep", "2", "--format", "json"]);
    let direct = run(&["fusion-table", "--type", "A1", "--level", "4", "--format", "json"]);
    assert_eq!(from_rep.code, 0);
    assert_eq!(from_rep.stdout, direct.stdout);
    let t: FusionTable = serde_json::from_str(&from_rep.stdout).unwrap();
    assert_eq!(t.level, 4);
    assert_eq!(t.n[1][1], vec![1, 0, 1]);
}

#[test]
fn checks_pass_on_spec_examples() {
    let r = run(&["check", "--type", "A1", "--level", "4"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(!r.stdout.contains("FAIL"));
    let r = run(&["check", "--type", "A2", "--level", "5"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
}

#[test]
fn malformed_input_exits_with_one() {
    for args in [
        &["check", "--type", "A1", "--level", "0"][..],
        &["basis", "--type", "A1"],
        &["basis", "--type", "A1", "--level", "2", "--rep", "1"],
        &["basis", "--type", "Q3", "--level", "2"],
        &["theta", "--type", "A1", "--level", "3"],
        &["theta", "--type", "A2", "--level", "3", "--chi", "1,x"],
        &["basis", "--type", "A2", "--level", "3", "--format", "xml"],
        &["coform", "--type", "A2", "--level", "3", "--omega", "1"],
        &["frobnicate"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn domain_errors_are_namespaced() {
    for (args, kind) in [
        (&["theta", "--type", "A1", "--level", "3", "--chi", "3"][..], "SingularInput:"),
        (&["coform", "--type", "A2", "--level", "4", "--omega", "1,0"], "SingularShift:"),
        (&["basis", "--type", "E8", "--level", "1"], "WeylGroupTooLarge:"),
        (&["basis", "--type", "A2", "--rep", "0,0"], "DegenerateTwist:"),
        (&["basis", "--type", "A2", "--rep", "1,-1"], "NotDominant:"),
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.stderr.starts_with(kind), "{args:?}: {}", r.stderr);
        assert_eq!(r.stderr.lines().count(), 1);
    }
}

#[test]
fn help_exits_cleanly() {
    let r = run(&["--help"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("fusion-table"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["check", "--type", "B2", "--level", "4", "--seed", "7", "--format", "json"][..],
        &["fusion-table", "--type", "G2", "--level", "5", "--format", "csv"],
        &["theta", "--type", "A2", "--level", "6", "--matrix", "--format", "json"],
    ] {
        let first = run(args);
        assert_eq!(first.code, 0);
        for _ in 0..2 {
            assert_eq!(run(args).stdout, first.stdout);
        }
    }
}

#[test]
fn json_round_trip_revalidates() {
    for (t, k) in [("A1", 7), ("A2", 6), ("B2", 5), ("G2", 5)] {
        let r = run(&["fusion-table", "--type", t, "--level", &k.to_string(), "--format", "json"]);
        let table: FusionTable = serde_json::from_str(&r.stdout).unwrap();
        assert_eq!(table.lie_type, t);
        assert!(table.validate().is_ok());
        assert!(table.negative_entries().is_empty());
        assert_eq!(serde_json::to_string(&table).unwrap() + "\n", r.stdout);
    }
}

#[test]
fn csv_layouts() {
    let r = run(&["fusion-table", "--type", "A1", "--level", "4", "--format", "csv"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "lambda,mu,nu,N");
    assert_eq!(lines.len(), 1 + 27);
    assert!(lines.contains(&"2,2,3,1"));
    let r = run(&["basis", "--type", "A2", "--level", "4", "--format", "csv"]);
    assert_eq!(r.stdout, "index,weight\n0,1;1\n1,1;2\n2,2;1\n");
}

#[test]
fn theta_lists_signed_characters() {
    let r = run(&["theta", "--type", "A1", "--level", "3", "--chi", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    assert_eq!(terms[0]["sign"], 1);
    assert_eq!(terms[1]["sign"], -1);
    assert_eq!(v["elementary_divisors"], serde_json::json!([6]));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let r = run(&["fusion-table", "--type", "A1", "--level", "3", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let table: FusionTable = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(table.basis.len(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ktwist");
    let ok = Command::new(bin).args(["basis", "--type", "A1", "--level", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let usage = Command::new(bin).args(["check", "--type", "A1", "--level", "0"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(1));
    let domain = Command::new(bin).args(["identity", "--type", "A1", "--level", "1"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&domain.stderr).trim_end(), "NoIdentity: rho is singular at level 1");
}

/// The full invariant sweep over the test grid stays within three minutes.
#[test]
fn grid_sweep() {
    let limit = Duration::from_secs(180);
    let start = Instant::now();
    for (t, kmax) in [("A1", 10), ("A2", 8), ("B2", 6), ("G2", 5)] {
        for k in 1..=kmax {
            let spec = JobSpec::parse_from(["ktwist", "check", "--type", t, "--level", &k.to_string()]).unwrap();
            let report = check(&spec).unwrap();
            assert!(report.passed(), "{t} k={k}: {:?}", report.checks);
        }
    }
    assert!(start.elapsed() < limit, "sweep took {:?}", start.elapsed());
}
