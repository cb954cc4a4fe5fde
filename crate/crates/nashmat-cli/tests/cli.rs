//! End-to-end tests of the binary: exact output bytes, JSON shape, exit
//! codes, batch behavior, and the stderr notes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const D4: &str = "4\n-2 1 1 1\n1 -2 0 0\n1 0 -2 0\n1 0 0 -2\n";
const SANDWICH: &str = "4\n-3 0 1 0\n0 -2 1 0\n1 1 -2 1\n0 0 1 -2\n";
const BAD_DIAGONAL: &str = "2\n2 1\n1 -2\n";

fn write(dir: &Path, name: &str, content: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path.display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nashmat"))
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

#[test]
fn nn_text_is_the_bare_verdict_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.txt", D4);
    let out = run(&[&d4, "--mode", "nn"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), ". 0 0 0\n1 . 1 1\n1 1 . 1\n1 1 1 .\n");
}

#[test]
fn nn_text_row_for_the_single_false_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "sandwich.txt", SANDWICH);
    let out = run(&[&path, "--mode", "nn"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[2], "0 1 . 1");
    assert_eq!(rows[0], ". 1 1 1");
}

#[test]
fn json_schema_and_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.txt", D4);
    let out = run(&[&d4, "--mode", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let obj = v.as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(
        keys,
        ["is_nash", "n", "nn", "oracle", "theorems", "valid"]
    );
    assert_eq!(obj["n"], 4);
    assert_eq!(obj["valid"], true);
    assert_eq!(obj["is_nash"], false);
    assert!(obj["nn"][0][0].is_null());
    assert_eq!(obj["nn"][1][0], 1);
    assert_eq!(obj["nn"][0][1], 0);
    let theorems = obj["theorems"].as_array().unwrap();
    assert!(!theorems.is_empty());
    for t in theorems {
        let t = t.as_object().unwrap();
        for key in ["id", "applicable", "verdict", "evidence"] {
            assert!(t.contains_key(key), "theorem entry lacks {key}");
        }
    }
    assert_eq!(obj["oracle"]["bound"], 12);
    assert_eq!(obj["oracle"]["mismatches"], 0);
    assert_eq!(obj["oracle"]["confirmed"], 9);
    assert_eq!(obj["oracle"]["consistent_false"], 3);
    // Round-trip: serializing the parsed value reproduces the same value.
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, again);
}

#[test]
fn exit_code_one_for_invalid_and_missing_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", BAD_DIAGONAL);
    let out = run(&[&bad, "--mode", "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("diagonal"));

    let missing = dir.path().join("not_there.txt").display().to_string();
    let out = run(&[&missing, "--mode", "validate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exit_code_two_when_the_oracle_cannot_confirm() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.txt", D4);
    // Bound 1 leaves every TRUE pair unconfirmed.
    let out = run(&[&d4, "--mode", "oracle", "--bound", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("no witness within bound 1"), "stderr: {err}");
    assert!(err.contains("(2, 1)"), "pairs must be 1-based: {err}");
}

#[test]
fn generated_inputs_are_deterministic() {
    let a = run(&["--gen", "n=6,d=2,seed=5", "--mode", "nn"]);
    let b = run(&["--gen", "n=6,d=2,seed=5", "--mode", "nn"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 6);
}

#[test]
fn batch_prints_headers_and_returns_worst_exit() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.txt", D4);
    let bad = write(dir.path(), "bad.txt", BAD_DIAGONAL);
    let out = run(&[&d4, &bad, "--mode", "validate"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains(&format!("== {d4} ==")));
    assert!(text.contains(&format!("== {bad} ==")));

    let out = run(&[&d4, &bad, "--mode", "validate", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert_eq!(arr[0]["valid"], true);
    assert_eq!(arr[1]["valid"], false);
    assert!(arr[1]["n"].is_null());
}

#[test]
fn positive_genus_gets_a_caveat_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "genus.txt", "2\n-2 1\n1 -2\ngenus: 1 0\n");
    let out = run(&[&path, "--mode", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("genus"));
    assert!(stdout(&out).contains("is_nash: true"));
}

#[test]
fn oversized_inputs_skip_engine_sections() {
    let dir = tempfile::tempdir().unwrap();
    let d4 = write(dir.path(), "d4.txt", D4);
    let out = run(&[&d4, "--mode", "all", "--format", "json", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["nn"].is_null());
    assert!(v["is_nash"].is_null());
    assert!(v["oracle"].is_null());
    assert!(!v["theorems"].is_null());
    assert!(stderr(&out).contains("--max-n 3"));
}

#[test]
fn no_inputs_is_an_error() {
    let out = run(&["--mode", "validate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("no inputs"));
}
