use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_valgebra"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn report(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

const SQUARE: &str = r#"{"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}"#;

#[test]
fn mixed_volume_of_unit_segments() {
    let input = r#"{"bodies": [{"dim": 2, "vertices": [[0, 0], [1, 0]]}, {"dim": 2, "vertices": [[0, 0], [0, 1]]}]}"#;
    let r = report(&run(&["mixed-volume", "--input", input], None));
    assert_eq!(r["result"], "1/2");
    assert_eq!(r["command"], "mixed-volume");
}

#[test]
fn unitary_dimension_and_lefschetz() {
    assert_eq!(report(&run(&["udim", "--k", "2", "--m", "2"], None))["result"], 2);
    let r = report(&run(&["lefschetz", "--h", "1,1,2,1,1"], None));
    assert_eq!((r["holds"].as_bool(), r["duality"].as_bool()), (Some(true), Some(true)));
    let out = run(&["udim", "--k", "5", "--m", "2"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn euler_evaluates_to_one_from_stdin() {
    let input = format!(r#"{{"valuation": {{"dim": 2, "terms": [{{"kind": "euler"}}]}}, "body": {SQUARE}}}"#);
    assert_eq!(report(&run(&["evaluate"], Some(&input)))["result"], "1");
}

#[test]
fn input_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("square.json");
    std::fs::write(&path, SQUARE).unwrap();
    let r = report(&run(&["intrinsic", "--level", "3", "--input", path.to_str().unwrap()], None));
    let v2 = &r["result"][2];
    assert_eq!((v2["lo"].as_str(), v2["hi"].as_str()), (Some("1"), Some("1")));
}

#[test]
fn validation_errors_name_the_field() {
    let out = run(&["intrinsic"], Some(r#"{"dim": 2, "vertices": [[0, 0], [1, "x"]]}"#));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("vertices[1][1]") && err.contains("invalid-input"), "{err}");

    let out = run(&["evaluate"], Some("{not json"));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));

    let mismatch = format!(r#"{{"valuation": {{"dim": 3, "terms": [{{"kind": "euler"}}]}}, "body": {SQUARE}}}"#);
    let out = run(&["evaluate"], Some(&mismatch));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dimension-mismatch"));
}

#[test]
fn cost_guard_is_reported() {
    let tri = r#"{"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}"#;
    let mv = format!(r#"{{"dim": 2, "terms": [{{"kind": "mv", "bodies": [{tri}]}}]}}"#);
    let pd = format!(
        r#"{{"dim": 2, "terms": [{{"kind": "pd", "density": {{"vars": 2, "terms": [{{"exp": [1, 0], "coef": "1"}}]}}, "slack": [{tri}]}}]}}"#
    );
    let prod = format!(r#"{{"dim": 2, "terms": [{{"kind": "product", "left": {pd}, "right": {mv}}}]}}"#);
    let input = format!(r#"{{"valuation": {prod}, "body": {SQUARE}}}"#);
    let out = run(&["evaluate", "--max-dim", "1"], Some(&input));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cost-guard"));
    assert!(run(&["evaluate"], Some(&input)).status.success());
}

#[test]
fn product_output_round_trips_and_reruns_are_identical() {
    let mv = r#"{"dim": 2, "terms": [{"kind": "mv", "bodies": [{"dim": 2, "vertices": [[0, 0], [2, 0], [0, 1]]}]}]}"#;
    let input = format!(r#"{{"left": {mv}, "right": {mv}, "body": {SQUARE}}}"#);
    let first = run(&["product", "--format", "pretty"], Some(&input));
    let second = run(&["product", "--format", "pretty"], Some(&input));
    assert_eq!(first.stdout, second.stdout);
    let r = report(&first);
    let emitted = r["result"].to_string();
    let again = format!(r#"{{"valuation": {emitted}, "body": {SQUARE}}}"#);
    assert_eq!(report(&run(&["evaluate"], Some(&again)))["result"], r["value"]);
}

#[test]
fn filtration_report() {
    let mv = r#"{"dim": 2, "terms": [{"kind": "mv", "bodies": [{"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}]}]}"#;
    let r = report(&run(&["filtration", "--seed", "3"], Some(mv)));
    assert_eq!(r["gamma_level"], 1);
    assert_eq!(r["w_level"], 1);
    assert_eq!(r["seed"], 3);
    assert!(!r["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn structure_constants_table() {
    let r = report(&run(&["structure-constants", "--dim", "2", "--level", "3"], None));
    let table = r["table"].as_array().unwrap();
    assert_eq!(table.len(), 6);
    let c11 = table.iter().find(|e| e["i"] == 1 && e["j"] == 1).unwrap();
    let f = c11["combined"]["float"].as_array().unwrap();
    let half_pi = std::f64::consts::FRAC_PI_2;
    assert!(f[0].as_f64().unwrap() <= half_pi && half_pi <= f[1].as_f64().unwrap());
}

#[test]
fn verify_subset() {
    let r = report(&run(&["verify", "--only", "1,10,11"], None));
    assert_eq!(r["criteria"].as_array().unwrap().len(), 3);
    assert_eq!(r["pass"], true);
    assert_eq!(run(&["verify", "--only", "99"], None).status.code(), Some(2));
}
