//! End-to-end tests driving the compiled binary.

use std::process::{Command, Output};

fn edval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn ed_block_class() {
    let out = edval(&["ed", "(t0,t1)_2 + (t2,t3)_2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("width rho = 4"), "{text}");
    assert!(text.contains("ed = 4 (exact)"), "{text}");
    assert!(text.contains("i0 = 4"), "{text}");
}

#[test]
fn ed_unit_slot_flag() {
    let out = edval(&["ed", "(5*t0,t1)_2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ed >= 2"));

    let out = edval(&["ed", "--henselian", "(5*t0,t1)_2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("ed = 2 (exact)"));
}

#[test]
fn ed_parse_error_exit_code() {
    let out = edval(&["ed", "(t0,t1)_6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("subscript must be a prime power"));
}

#[test]
fn ed_contract_violation_exit_code() {
    let out = edval(&["brauer", "(t0,t1,t2)_2"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn ed_json_is_stable() {
    let a = edval(&["ed", "--json", "(t0,t1)_4"]);
    let b = edval(&["ed", "--json", "(t0,t1)_4"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let value: serde_json::Value = serde_json::from_str(stdout(&a).trim()).expect("valid json");
    assert_eq!(value["rho"], 2);
    assert_eq!(value["exact"], true);
    assert_eq!(value["a_omega"]["factors"], serde_json::json!(["4", "4"]));
    assert_eq!(value["brauer"]["i0"], 2);
    // stable field order
    let text = stdout(&a);
    let p_pos = text.find("\"p\"").unwrap();
    let rho_pos = text.find("\"rho\"").unwrap();
    let brauer_pos = text.find("\"brauer\"").unwrap();
    assert!(p_pos < rho_pos && rho_pos < brauer_pos);
}

#[test]
fn rank_guard_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_edval"))
        .args(["ed", "(t0,t1)_2 + (t2,t3)_2"])
        .env("EDVAL_MAX_RANK", "3")
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("EDVAL_MAX_RANK"));
}

#[test]
fn rank_flag_embeds() {
    let out = edval(&["witness", "--rank", "4", "(t0,t1)_2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 0, 0, 0]"), "{text}");
}

#[test]
fn gen_presets() {
    let out = edval(&["gen", "--preset", "t1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out).trim(),
        "(t0,t1,t2)_2 + (t0,t3,t4)_2 + (t0,t5,t6)_2"
    );

    let out = edval(&["gen", "--preset", "chain", "--r", "4", "--p", "2"]);
    assert_eq!(
        stdout(&out).trim(),
        "(t0,t1,t2)_2 + (t0,t3,t4)_2 + (t0,t5,t6)_2 + (t0,t7,t8)_2"
    );

    let out = edval(&[
        "gen", "--preset", "generic", "--r", "2", "--d", "3", "--p", "3",
    ]);
    assert_eq!(stdout(&out).trim(), "(t0,t1,t2)_3 + (t3,t4,t5)_3");

    let out = edval(&["gen", "--preset", "nope"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gen_writes_file_and_ed_reads_it() {
    let dir = std::env::temp_dir().join(format!("edval-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t1.txt");
    let out = edval(&["gen", "--preset", "t1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());

    let out = edval(&["ed", "--file", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("width rho = 7"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_claim_lines() {
    let out = edval(&["check-claim", "--n", "9", "--d", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines.len(), 9);
    for (j, line) in lines.iter().enumerate() {
        let value: serde_json::Value = serde_json::from_str(line).expect("json line");
        assert_eq!(value["j"], j as u64);
        let set: Vec<u64> = value["set"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(set.len(), 3);
        assert!(set.contains(&(j as u64)));
        assert_eq!(set.iter().sum::<u64>() % 9, 0);
    }
}

#[test]
fn classify_chain() {
    let out = edval(&["classify", "(t0,t1,t2)_3 + (t0,t3,t4)_3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("NonSymbol"));
}

#[test]
fn mixed_degree_report() {
    let out = edval(&["ed", "(t0)_2 + (t1,t2)_2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("degree = mixed"), "{text}");
    assert!(text.contains("classification: Mixed"), "{text}");

    let out = edval(&["ed", "--json", "(t0)_2 + (t1,t2)_2"]);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["degree"], serde_json::Value::Null);
    assert_eq!(value["classification"], "Mixed");
    assert_eq!(value["rho"], 3);
}

#[test]
fn sweep_json_is_byte_identical() {
    let a = edval(&["sweep", "--json", "--seed", "7"]);
    let b = edval(&["sweep", "--json", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
    let rows: serde_json::Value = serde_json::from_str(stdout(&a).trim()).expect("valid json");
    let rows = rows.as_array().expect("array of criteria");
    assert_eq!(rows.len(), 11);
    for row in rows.iter().skip(1) {
        assert_eq!(row["pass"], true, "{row}");
    }
}
