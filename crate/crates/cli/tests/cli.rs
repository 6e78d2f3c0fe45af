use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn expsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn truncation_check_prints_twenty_rows() {
    let o = expsum(&["check", "--theorem", "T3_1", "--n", "5", "--samples", "20", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theorem,n,seed,lhs,rhs,margin,status");
    assert_eq!(lines.len(), 21);
    assert!(lines[1..].iter().all(|l| l.starts_with("T3_1,5,") && l.ends_with(",Holds")));
}

#[test]
fn same_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| {
        let p = dir.path().join(name);
        let o = expsum(&[
            "sweep", "--theorem", "T2_4", "--n-min", "2", "--n-max", "4", "--samples", "6", "--seed", seed,
            "--q", "1", "--format", "json", "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(p).unwrap()
    };
    let a = run("a.json", "5");
    assert_eq!(a, run("b.json", "5"));
    assert_ne!(a, run("c.json", "6"));
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 18);
}

#[test]
fn witness_exponents_feed_extremal() {
    let dir = tempfile::tempdir().unwrap();
    let exps = dir.path().join("exps.json");
    let w = expsum(&["witness", "--theorem", "T8_1", "--n", "2", "--lambda", "10", "--exponents-out", exps.to_str().unwrap()]);
    assert_eq!(code(&w), 0);
    let wv: Value = serde_json::from_str(&stdout(&w)).unwrap();
    assert!((wv["ratio"].as_f64().unwrap() - 10.0).abs() < 1e-5);
    assert_eq!(json_file(&exps).as_array().unwrap().len(), 2);

    let out = dir.path().join("ext.json");
    let o = expsum(&[
        "extremal", "--exponents", exps.to_str().unwrap(), "--interval", "0", "1", "--weight-rate", "0",
        "--functional", "point:0", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_file(&out);
    assert!(v["value"].as_f64().unwrap() > 0.0);
    assert!(v["condition"].as_f64().unwrap() >= 1.0);
    assert_eq!(v["witness_coeffs"].as_array().unwrap().len(), 2);
}

#[test]
fn extremal_single_exponential_has_unit_kernel() {
    let dir = tempfile::tempdir().unwrap();
    let exps = dir.path().join("one.json");
    std::fs::write(&exps, r#"[{"re": 0.0, "im": 0.0}]"#).unwrap();
    let o = expsum(&["extremal", "--exponents", exps.to_str().unwrap(), "--interval", "0", "1", "--functional", "point:0.3"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-14);
}

#[test]
fn sigma_one_is_two() {
    let o = expsum(&["sigma", "--k", "1", "--grid", "1024"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["value"].as_f64().unwrap() - 2.0).abs() < 1e-3);
}

#[test]
fn floats_carry_seventeen_digits() {
    let o = expsum(&["check", "--theorem", "T10_2", "--n", "3", "--samples", "2"]);
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let mantissa = row[3].split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{}", row[3]);
}

#[test]
fn bad_flags_exit_64() {
    assert_eq!(code(&expsum(&["check", "--theorem", "T9_9", "--n", "3"])), 64);
    assert_eq!(code(&expsum(&["check", "--theorem", "T3_1"])), 64);
    assert_eq!(code(&expsum(&["sweep", "--theorem", "T3_1", "--n-min", "4", "--n-max", "2"])), 64);
    assert_eq!(code(&expsum(&["extremal", "--exponents", "x.json", "--functional", "value:1"])), 64);
    assert_eq!(code(&expsum(&["frobnicate"])), 64);
}

#[test]
fn numerical_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let exps = dir.path().join("close.json");
    let recs: Vec<String> = (0..12).map(|k| format!(r#"{{"re": 0.0, "im": {}}}"#, 0.001 * k as f64)).collect();
    std::fs::write(&exps, format!("[{}]", recs.join(","))).unwrap();
    let o = expsum(&["check", "--theorem", "T2_3", "--n", "12", "--exponents", exps.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("Inconclusive"));
    assert!(!o.stderr.is_empty());
    let o = expsum(&["extremal", "--exponents", exps.to_str().unwrap(), "--interval", "0", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_expsum"))
            .args(["check", "--theorem", "T2_1", "--n", "4", "--samples", "12"])
            .env("EXPSUM_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("0"));
    assert_eq!(run("3"), run("1"));
}
