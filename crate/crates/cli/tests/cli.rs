use std::process::{Command, Output};

use genfactor::polyrat::parse_expr;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_genfactor")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/../core/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn gf_prints_suffix_function() {
    let out = run(&["gf", "--stat", "S", "-u", "123"]);
    assert!(out.status.success());
    let printed = parse_expr(stdout(&out).trim()).unwrap();
    assert!(printed.rat_eq(&parse_expr("t^3*x^6/((1-x)^2*(1-x-t*x+t*x^3-t^2*x^4))").unwrap()));
}

#[test]
fn gf_json_round_trips_and_dumps() {
    let v = json(&["gf", "--stat", "F", "-u", "132", "--series", "6", "--dump-nfa"]);
    let expr = parse_expr(v["gf"]["expr"].as_str().unwrap()).unwrap();
    let parts = parse_expr(&format!("({})/({})", v["gf"]["num"].as_str().unwrap(), v["gf"]["den"].as_str().unwrap())).unwrap();
    assert!(expr.rat_eq(&parts));
    assert_eq!(v["nfa"]["states"].as_array().unwrap().len(), 5);
    let first = &v["series"][0];
    assert_eq!((first["length"].as_u64(), first["norm"].as_u64(), first["coeff"].as_str()), (Some(3), Some(6), Some("1")));
}

#[test]
fn wilf_verdicts() {
    let out = run(&["wilf", "-u", "122", "-v", "212"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "NOT equivalent");
    assert_eq!(stdout(&run(&["wilf", "-u", "123", "-v", "321"])).trim(), "equivalent");
}

#[test]
fn mobius_example_and_interval() {
    assert_eq!(stdout(&run(&["mobius", "--alphabet", "ab", "-u", "b", "-w", "abbaabb"])).trim(), "1");
    let v = json(&["mobius", "--alphabet", "ab", "-u", "b", "-w", "abbaabb", "--interval"]);
    let total: usize = v["interval"].as_array().unwrap().iter().map(|l| l.as_array().unwrap().len()).sum();
    assert_eq!(total, 18);
}

#[test]
fn strongwilf_reports_witness_or_agreement() {
    let v = json(&["strongwilf", "-u", "2143", "-v", "3412", "--bound", "22"]);
    assert_eq!(v["witness"]["em"], serde_json::json!([1, 3, 4]));
    assert_eq!(v["witness"]["norm"], 21);
    let agree = json(&["strongwilf", "-u", "12", "-v", "21", "--bound", "10"]);
    assert!(agree["witness"].is_null());
    assert_eq!(agree["message"], "no divergence up to bound 10");
}

#[test]
fn classify_and_tables() {
    let v = json(&["classify", "--perms", "3"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    let words = json(&["classify", "--maxlen", "2", "--maxpart", "2"]);
    assert!(!words.as_array().unwrap().is_empty());
    for f in ["table1.json", "table2.json"] {
        let out = run(&["verify-tables", "--fixture", &fixture(f)]);
        assert!(out.status.success(), "{f}: {}", stdout(&out));
    }
}

#[test]
fn pattern_and_poset() {
    let v = json(&["pattern", "-p", "1,1", "--stat", "F", "--series", "5"]);
    assert!(parse_expr(v["gf"]["expr"].as_str().unwrap()).unwrap().rat_eq(&parse_expr("t^2*x^2/((1-x-t*x)*(1-x))").unwrap()));
    let dir = std::env::temp_dir().join(format!("genfactor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ab.json");
    std::fs::write(&path, r#"{"elements": ["a", "b"], "covers": []}"#).unwrap();
    let out = run(&["poset", "--file", path.to_str().unwrap(), "-u", "a", "--stat", "S", "--series", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().nth(1), Some("0 1 1 1 1"));
    let missing = run(&["poset", "--file", dir.join("none.json").to_str().unwrap(), "-u", "a"]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("--file"));
}

#[test]
fn checks_and_witnesses() {
    assert!(run(&["verify-closed-forms", "--max-n", "4"]).status.success());
    let conj = run(&["check-conjecture", "--range", "2..3"]);
    assert!(conj.status.success());
    assert_eq!(stdout(&conj).lines().count(), 8);
    let w = json(&["witness", "--spec", "interleave(2, matched(12, 21, 8))", "--bound", "8"]);
    assert!(w["failure"].is_null());
    assert_eq!((w["u"].as_str(), w["v"].as_str()), (Some("1122"), Some("2211")));
    assert!(run(&["witness", "--list"]).status.success());
    let mn = json(&["mn", "-u", "1352463", "-v", "1362453", "-w", "1,1,2,4,8,3,9,5,4,5,5,4,5,5,3,3,3,6,6,5,5,3"]);
    assert_eq!(mn["eta"], serde_json::json!([5, 7, 18]));
}

#[test]
fn exit_codes_and_diagnostics() {
    let bad_word = run(&["gf", "-u", "1x2"]);
    assert_eq!(bad_word.status.code(), Some(1));
    let err = String::from_utf8_lossy(&bad_word.stderr);
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("-u"));
    assert_eq!(run(&["gf", "--stat", "Q", "-u", "1"]).status.code(), Some(2));
    assert_eq!(run(&["strongwilf", "-u", "1", "-v", "1", "--bound", "99"]).status.code(), Some(2));
    assert_eq!(run(&["pattern", "-p", "[1,2"]).status.code(), Some(1));
    assert_eq!(run(&["witness", "--spec", "nope(1)"]).status.code(), Some(1));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--json", "classify", "--perms", "4"][..],
        &["--json", "strongwilf", "-u", "123", "-v", "132", "--bound", "12"][..],
        &["gf", "--stat", "A", "-u", "2143", "--series", "10"][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}
