use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn wpart(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wpart"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn rational(v: &Value) -> (String, String) {
    let obj = v.as_object().expect("rational is an object");
    assert_eq!(obj.len(), 2);
    (
        obj["num"].as_str().unwrap().to_string(),
        obj["den"].as_str().unwrap().to_string(),
    )
}

/// Checks the report schema; `coeff` validates one lhs/rhs value.
fn assert_report_shape(v: &Value, coeff: impl Fn(&Value)) {
    let obj = v.as_object().unwrap();
    assert!(obj["identity"].is_string());
    assert!(["evaluated", "symbolic"].contains(&obj["mode"].as_str().unwrap()));
    assert!(obj["params"]["n_max"].is_u64());
    let rows = obj["rows"].as_array().unwrap();
    for row in rows {
        assert!(row["n"].is_u64());
        assert!(row["pass"].is_boolean());
        coeff(&row["lhs"]);
        coeff(&row["rhs"]);
    }
    let all = rows.iter().all(|r| r["pass"].as_bool().unwrap());
    assert_eq!(obj["overall"].as_bool().unwrap(), all);
}

fn poly_shape(v: &Value) {
    for term in v.as_array().expect("polynomial is an array") {
        assert_eq!(term.as_object().unwrap().len(), 4);
        assert!(term["et"].is_i64() && term["eu"].is_u64());
        assert!(term["num"].is_string() && term["den"].is_string());
    }
}

#[test]
fn example3_passes_with_expected_row() {
    let out = wpart(&["verify", "ex3", "--n-max", "20", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_report_shape(&v, |c| {
        rational(c);
    });
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 20);
    assert!(rows
        .iter()
        .enumerate()
        .all(|(i, r)| r["n"] == i + 1 && r["pass"] == true));
    let two = ("2".to_string(), "1".to_string());
    assert_eq!(rational(&rows[2]["lhs"]), two);
    assert_eq!(rational(&rows[2]["rhs"]), two);
}

#[test]
fn theorem4_table_shows_five() {
    let out = wpart(&["verify", "thm4", "--n-max", "20", "--t", "2", "--seq", "n"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let row2: Vec<&str> = text
        .lines()
        .find(|l| l.starts_with("2 "))
        .unwrap()
        .split_whitespace()
        .collect();
    assert_eq!(row2, ["2", "5", "5", "ok"]);
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn t_equal_to_one_is_a_usage_error() {
    let out = wpart(&["verify", "thm4", "--t", "1", "--seq", "n"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("t must differ from 0 and 1"));
    let out = wpart(&["verify", "cor2", "--t", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_errors_exit_two() {
    for args in [
        &["verify", "thm9"][..],
        &["verify", "thm1", "--t", "0.5"],
        &["verify", "thm1", "--seq", "n +"],
        &["verify", "thm1", "--n-max", "0"],
        &["verify", "thm1", "--seq", "1/(n-2)"],
        &["transform", "--seq", "n"],
        &[
            "heine", "--a", "1,1", "--b", "1,1", "--c", "1,-2", "--z", "1,1",
        ],
        &["expand", "thm4", "--side", "lhs"],
    ] {
        let out = wpart(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
    assert!(stderr(&wpart(&["verify", "thm1", "--seq", "n +"])).contains("byte 3"));
}

#[test]
fn corrupted_rhs_exits_one_and_names_n() {
    for id in [
        "thm1", "thm2", "thm3", "thm4", "cor1", "cor2", "ex1", "ex2", "ex3",
    ] {
        let out = wpart(&["verify", id, "--n-max", "8", "--corrupt-rhs", "5"]);
        assert_eq!(out.status.code(), Some(1), "{id}");
        assert!(stderr(&out).contains("first failing n = 5"), "{id}");
    }
}

#[test]
fn symbolic_mode_reports_polynomials() {
    for id in ["thm1", "thm2", "thm3", "thm4", "cor1", "cor2"] {
        let out = wpart(&[
            "verify", id, "--mode", "symbolic", "--n-max", "8", "--seq", "n^2", "--format", "json",
        ]);
        assert_eq!(out.status.code(), Some(0), "{id}");
        let v = json(&out);
        assert_eq!(v["mode"], "symbolic");
        assert_report_shape(&v, poly_shape);
    }
}

#[test]
fn expand_sides_agree() {
    let lhs = json(&wpart(&[
        "expand", "thm3", "--side", "lhs", "--n-max", "10", "--format", "json",
    ]));
    let rhs = json(&wpart(&[
        "expand", "thm3", "--side", "rhs", "--n-max", "10", "--format", "json",
    ]));
    assert_eq!(lhs["values"], rhs["values"]);
    assert_eq!(lhs["values"].as_array().unwrap().len(), 10);
    assert_eq!(lhs["side"], "lhs");
}

#[test]
fn partitions_in_both_formats() {
    let out = wpart(&["partitions", "5", "--stats"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "5  k=1 Q=1 s=5 l=5");
    assert!(lines[6].starts_with("1+1+1+1+1"));

    let v = json(&wpart(&["partitions", "6", "--stats", "--format", "json"]));
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 11);
    assert_eq!(
        items[0]["partition"]["mult"],
        serde_json::json!([0, 0, 0, 0, 0, 1])
    );
    assert_eq!(items[0]["stats"]["Q"], 1);
}

#[test]
fn transform_round_trip() {
    let out = wpart(&[
        "transform",
        "--forward",
        "--seq",
        "1",
        "--n-max",
        "12",
        "--format",
        "json",
    ]);
    let v = json(&out);
    let tau: Vec<String> = v["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| rational(x).0)
        .collect();
    assert_eq!(
        tau,
        ["1", "2", "2", "3", "2", "4", "2", "4", "3", "4", "2", "6"]
    );
    let out = wpart(&["transform", "--inverse", "--seq", "n", "--n-max", "6"]);
    let phi: Vec<String> = stdout(&out)
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().nth(1).unwrap().to_string())
        .collect();
    assert_eq!(phi, ["1", "1", "2", "2", "4", "2"]);
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn fine_spec_file() {
    let one = r#"{"num":"1","den":"1"}"#;
    let half = r#"{"num":"1","den":"2"}"#;
    let spec = format!(r#"{{"table":[[{one},{half},{one}],[{one},{one}]]}}"#);
    let path = temp_file("fine_ok.json", &spec);
    let out = wpart(&[
        "fine",
        "--spec",
        path.to_str().unwrap(),
        "--n-max",
        "10",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_report_shape(&v, |c| {
        rational(c);
    });
    assert_eq!(v["rows"].as_array().unwrap().len(), 11);

    let bad = temp_file(
        "fine_bad.json",
        &format!(r#"{{"table":[[{one}]],"tail":{half}}}"#),
    );
    let out = wpart(&["fine", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = wpart(&["fine", "--spec", "/nonexistent/spec.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn heine_proof_instance_passes() {
    let out = wpart(&[
        "heine", "--a", "2,1", "--b", "1,2", "--c", "2,3", "--z", "1,1", "--n-max", "12",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 13);
    assert_eq!(v["params"]["b"], "1,2");
}

#[test]
fn output_file_receives_the_report() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("ex1_report.json");
    let out = wpart(&[
        "verify",
        "ex1",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["identity"], "ex1");
}
