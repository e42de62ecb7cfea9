use std::path::PathBuf;
use std::process::{Command, Output};

fn ricalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ricalc")).args(args).output().expect("binary runs")
}

fn fixture(name: &str, body: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json_line(o: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(o).lines().last().unwrap()).unwrap()
}

#[test]
fn norm_of_indicator_in_l1() {
    let f = fixture("chi.json", r#"{"breakpoints":[1],"values":[1]}"#);
    let o = ricalc(&["norm", "--space", r#"{"p":1,"q":1,"A":[0,0]}"#, f.to_str().unwrap()]);
    assert!(o.status.success());
    let v = json_line(&o);
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["exact"], true);
}

#[test]
fn maximal_range_functional() {
    let f = fixture("chi2.json", r#"{"breakpoints":[1],"values":[1]}"#);
    let o = ricalc(&["norm", "--functional", "maximal-range", "--X", r#"{"p":1,"q":1,"A":[1,0]}"#, f.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_line(&o)["value"].as_f64().unwrap();
    assert!((v - 1.0).abs() < 1e-12);
    let o = ricalc(&["norm", "--functional", "maximal-range", "--X", r#"{"p":1,"q":1,"A":[0,0]}"#, f.to_str().unwrap()]);
    assert_eq!(json_line(&o)["value"], "inf");
    assert_eq!(stdout(&o).lines().next(), Some("inf"));
}

#[test]
fn empty_function_has_zero_norm() {
    let f = fixture("empty.json", r#"{"breakpoints":[],"values":[]}"#);
    let o = ricalc(&["norm", "--space", r#"{"p":2,"q":1,"A":[0,0]}"#, f.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(json_line(&o)["value"], 0.0);
}

#[test]
fn malformed_spec_fails() {
    let f = fixture("bad.json", r#"{"breakpoints":[2,1],"values":[1,1]}"#);
    let o = ricalc(&["norm", "--space", r#"{"p":1,"q":1,"A":[0,0]}"#, f.to_str().unwrap()]);
    assert!(!o.status.success());
    assert!(!o.stderr.is_empty());
    let g = fixture("ok.json", r#"{"breakpoints":[1],"values":[1]}"#);
    let o = ricalc(&["norm", "--space", r#"{"p":0.5}"#, g.to_str().unwrap()]);
    assert!(!o.status.success());
}

#[test]
fn optimal_lookups() {
    let o = ricalc(&["optimal", "M", "--p", "2", "--q", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "lz");
    assert_eq!(v["params"]["p"], 2.0);
    assert_eq!(v["condition"]["name"], "psi");
    assert_eq!(v["condition"]["holds"], true);

    let o = ricalc(&["optimal", "M", "--p", "1", "--q", "1", "--A", "0,0"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "none");
    assert_eq!(v["condition"]["holds"], false);

    let o = ricalc(&["optimal", "M", "--p", "1", "--q", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "untabulated");

    let o = ricalc(&["optimal", "I", "--p", "1.5", "--q", "2", "--A", "-1,0.5", "--gamma", "1", "--dim", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["kind"], "lz");
    assert!((v["params"]["p"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert_eq!(v["params"]["A"], serde_json::json!([-1.0, 0.5]));
}

#[test]
fn verify_writes_reports() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("verify-prelim");
    let o = ricalc(&["verify", "preliminaries", "--n", "40", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("report.csv")).unwrap();
    assert!(csv.starts_with("check,inputs_digest,lhs,rhs,constant,tolerance,pass\n"));
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["suite"], "preliminaries");
}

#[test]
fn unknown_suite_is_rejected() {
    assert!(!ricalc(&["verify", "nonsense"]).status.success());
}
