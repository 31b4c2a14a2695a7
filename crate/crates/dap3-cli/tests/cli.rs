//! End-to-end checks of the command-line surface: output formats, exit codes,
//! and byte-stability of scans.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn dap3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dap3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn tmp_file(name: &str, contents: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, contents).unwrap();
    path
}

const TABLE2_PROBLEM: &str = r#"{"t":2,"u":2,"v":6,"s_t":7,"s_u":4,"s_v":1,"x_t":"1","x_u":"4/5","x_v":"19/5"}"#;

#[test]
fn muffin_7_6_prints_one_third() {
    let out = dap3(&["muffin", "7", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f = 1/3"), "{text}");
}

#[test]
fn muffin_solution_flag_emits_validated_json() {
    let out = dap3(&["muffin", "5", "3", "--solution"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("f = 5/12"), "{text}");
    let json_start = text.find('{').unwrap();
    let value: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(value["value"], "5/12");
    assert!(value["T"].as_array().unwrap().len() == 5);
}

#[test]
fn muffin_rejects_zero_arguments() {
    let out = dap3(&["muffin", "0", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn muffin_decimal_column() {
    let out = dap3(&["muffin", "7", "5", "--decimal", "4"]);
    let text = stdout(&out);
    assert!(text.contains("f = 1/3 (0.3333)"), "{text}");
    assert!(text.contains("g = 3/10 (0.3000)"), "{text}");
}

#[test]
fn dap_solves_table2() {
    let path = tmp_file("table2.json", TABLE2_PROBLEM);
    let out = dap3(&["dap", path.to_str().unwrap()]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["value"], "3/10");
    // Huddleston route gives the identical value.
    let out = dap3(&["dap", path.to_str().unwrap(), "--huddleston"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["value"], "3/10");
}

#[test]
fn dap_rejects_schema_violation() {
    let path = tmp_file("bad_schema.json", r#"{"t":2,"u":3}"#);
    let out = dap3(&["dap", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dap_rejects_invalid_problem() {
    // Demands out of order: x_u/u >= x_v/v.
    let path = tmp_file(
        "invalid_problem.json",
        r#"{"t":2,"u":2,"v":2,"s_t":2,"s_u":1,"s_v":1,"x_t":"1","x_u":"11/10","x_v":"9/10"}"#,
    );
    let out = dap3(&["dap", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn family_scan_is_deterministic_and_ordered() {
    let args = ["family", "2", "4", "3", "0", "1/2", "--s", "60"];
    let first = dap3(&args);
    assert!(first.status.success());
    let second = dap3(&args);
    assert_eq!(first.stdout, second.stdout, "scan output must be byte-stable");
    let text = stdout(&first);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,s_u,s_v,g,N,b,kind"));
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    // s_v strictly increases down the file (equivalently x decreases).
    let s_vs: Vec<u64> = rows
        .iter()
        .map(|row| row.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert!(s_vs.windows(2).all(|w| w[0] < w[1]));
    // Parallel scan produces identical bytes.
    let par = dap3(&["family", "2", "4", "3", "0", "1/2", "--s", "60", "--jobs", "4"]);
    assert_eq!(first.stdout, par.stdout);
}

#[test]
fn family_scan_empty_body() {
    // u = v = 2 with t = 3: no split of s = 2 makes (2 s_u + 2 s_v) divisible by 3.
    let out = dap3(&["family", "3", "2", "2", "-1", "1/2", "--s", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "x,s_u,s_v,g,N,b,kind\n");
}

#[test]
fn family_rejects_bad_params() {
    // lambda >= gamma (u - v).
    let out = dap3(&["family", "2", "3", "2", "1", "1/2", "--s", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_round_trip_and_mismatch() {
    let problem = tmp_file("verify_problem.json", TABLE2_PROBLEM);
    let solved = dap3(&["dap", problem.to_str().unwrap()]);
    let solution = tmp_file("verify_solution.json", &stdout(&solved));
    let ok = dap3(&[
        "verify",
        problem.to_str().unwrap(),
        solution.to_str().unwrap(),
    ]);
    assert!(ok.status.success());

    // The alternative optimum from the worked example also verifies.
    let alt = serde_json::json!({
        "value": "3/10",
        "T": [["1/2","1/2"],["3/10","7/10"],["3/10","7/10"],["3/10","7/10"],
               ["3/10","7/10"],["1/2","1/2"],["1/2","1/2"]],
        "U": [["3/10","1/2"],["3/10","1/2"],["3/10","1/2"],["3/10","1/2"]],
        "V": [["1/2","1/2","7/10","7/10","7/10","7/10"]]
    });
    let alt_path = tmp_file("verify_alt.json", &alt.to_string());
    let ok = dap3(&[
        "verify",
        problem.to_str().unwrap(),
        alt_path.to_str().unwrap(),
    ]);
    assert!(ok.status.success(), "the alternative optimum validates");

    // Perturb one cell: rowsum violation, nonzero exit.
    let tampered = stdout(&solved).replacen("\"3/10\",\n", "\"3/10\",\n      \"1/1000\",", 0);
    let mut value: serde_json::Value = serde_json::from_str(&tampered).unwrap();
    value["T"][0][0] = serde_json::Value::String("301/1000".into());
    let bad_path = tmp_file("verify_bad.json", &value.to_string());
    let bad = dap3(&[
        "verify",
        problem.to_str().unwrap(),
        bad_path.to_str().unwrap(),
    ]);
    assert!(!bad.status.success());
}

#[test]
fn oracle_agreement_and_scale() {
    let out = dap3(&["oracle", "5", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "5/12 AGREE");
    let out = dap3(&["oracle", "6", "5"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2/5 AGREE");
    let out = dap3(&["oracle", "20", "13"]);
    assert_eq!(out.status.code(), Some(4));
}
