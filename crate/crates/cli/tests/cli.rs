use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cospectral"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    (serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")), out.status.code().unwrap())
}

fn schema() -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(report: &Value) {
    let v = schema();
    let errors: Vec<String> = v.iter_errors(report).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

fn write_spec(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn hetero_examples() {
    let (r, code) = json(&["hetero", "--exponents", "3"]);
    assert_eq!((r["sc_subgroup"]["order"].as_u64(), r["predicted"]["equal"].as_bool(), code), (Some(2), Some(true), 0));
    assert_valid(&r);
    let (r, code) = json(&["hetero", "--exponents", "3,4,5", "--verify-oracle"]);
    assert_eq!((r["sc_subgroup"]["order"].as_u64(), r["predicted"]["equal"].as_bool(), code), (Some(8), Some(true), 0));
    assert_eq!(r["oracle"]["character_projector"]["status"], "agree");
    assert_eq!(r["oracle"]["dense"]["status"], "skipped");
    assert_valid(&r);
    assert_eq!(run(&["hetero", "--exponents", "2"]).status.code(), Some(1));
    assert_eq!(run(&["hetero", "--exponents", "13,14"]).status.code(), Some(1));
}

#[test]
fn cubelike_examples() {
    let (r, code) = json(&["cubelike", "--levels", "1", "--verify-oracle"]);
    assert_eq!(code, 0);
    assert_eq!(r["construction"]["dims"], serde_json::json!([5]));
    assert_eq!(r["predicted"]["order"], 2);
    assert_eq!(r["predicted"]["contained"], true);
    assert_eq!(r["sc_subgroup"]["elements"][1]["hex"], "0x10");
    assert_valid(&r);
    let (r, code) = json(&["cubelike", "--levels", "2"]);
    assert_eq!(code, 0);
    assert_eq!((r["construction"]["n"].as_u64(), r["predicted"]["order"].as_u64()), (Some(22), Some(4)));
    assert_eq!(r["predicted"]["contained"], true);
    assert_eq!(r["graph"], Value::Null);
    assert_valid(&r);
    let refused = run(&["cubelike", "--dims", "5,15"]);
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--force"));
    let (r, _) = json(&["cubelike", "--dims", "5,7", "--force"]);
    assert_eq!(r["construction"]["meets_ebound"], false);
    assert_valid(&r);
    assert_eq!(run(&["cubelike", "--levels", "3"]).status.code(), Some(1));
}

#[test]
fn analyze_examples_and_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write_spec(&dir, "c4.json", r#"{"group": [4], "connection_set": [[1], [3]]}"#);
    let (r, code) = json(&["analyze", "--input", &c4, "--verify-oracle"]);
    assert_eq!(code, 0);
    assert_eq!(r["sc_subgroup"]["elements"], serde_json::json!([[0], [2]]));
    assert_eq!(r["oracle"]["agrees"], true);
    assert_valid(&r);
    let k2 = write_spec(&dir, "k2.json", r#"{"group": [2], "connection_set": [[1]]}"#);
    assert_eq!(json(&["analyze", "--input", &k2]).0["sc_subgroup"]["order"], 2);

    let bad = write_spec(&dir, "bad.json", r#"{"group": [8], "connection_set": [[1], [2], [7]]}"#);
    let out = run(&["analyze", "--input", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inverse"));

    let broken = write_spec(&dir, "broken.json", "{\"group\": [8],\n  \"connection_set\": [[1], [7],]}");
    let out = run(&["analyze", "--input", &broken]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column"), "{}", String::from_utf8_lossy(&out.stderr));

    let missing = run(&["analyze", "--input", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["hetero"]).status.code(), Some(1));
    assert_eq!(run(&["cubelike", "--levels", "1", "--dims", "5"]).status.code(), Some(1));
    assert_eq!(run(&["hetero", "--exponents", "3", "--format", "yaml"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn failed_verdict_exits_two() {
    // below the separation bound the nuclei need not be strongly cospectral
    let (r, code) = json(&["cubelike", "--dims", "5,7", "--force"]);
    assert_eq!(code, 2);
    assert_eq!(r["predicted"]["contained"], false);
    assert_eq!(r["construction"]["determination"]["holds"], false);
    assert_valid(&r);
    // the bound is sufficient, not necessary
    let (r, code) = json(&["cubelike", "--dims", "5,11", "--force"]);
    assert_eq!((code, r["construction"]["meets_ebound"].as_bool()), (0, Some(false)));
    let out = run(&["selftest", "--count", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn reports_round_trip_through_their_echo() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "g.json", r#"{"group": [4, 6], "connection_set": [[1, 0], [3, 0], [0, 3], [2, 1], [2, 5]]}"#);
    let (first, _) = json(&["analyze", "--input", &spec]);
    let echo = write_spec(&dir, "echo.json", &first["graph"].to_string());
    let (second, _) = json(&["analyze", "--input", &echo]);
    let strip = |mut v: Value| {
        v["seconds"] = Value::Null;
        v
    };
    assert_eq!(strip(first.clone()), strip(second));

    // constructions: the echoed graph reproduces the spectral content
    for args in [&["hetero", "--exponents", "3,4"][..], &["cubelike", "--levels", "1"][..]] {
        let (r, _) = json(args);
        let echo = write_spec(&dir, "c.json", &r["graph"].to_string());
        let (g, _) = json(&["analyze", "--input", &echo]);
        for key in ["group", "degree", "components"] {
            assert_eq!(r[key], g[key], "{args:?} {key}");
        }
        assert_eq!(r["spectrum"]["classes"], g["spectrum"]["classes"], "{args:?}");
        assert_eq!(r["sc_subgroup"]["elements"], g["sc_subgroup"]["elements"], "{args:?}");
    }
}

fn numbers_in(text: &str) -> Vec<f64> {
    text.split(|c: char| !(c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '_'))
        .filter(|t| !t.starts_with("0x"))
        .filter_map(|t| t.parse::<f64>().ok())
        .collect()
}

fn json_leaves(v: &Value, numbers: &mut Vec<f64>, strings: &mut Vec<String>) {
    match v {
        Value::Number(n) => numbers.push(n.as_f64().unwrap()),
        Value::String(s) => strings.push(s.clone()),
        Value::Array(a) => a.iter().for_each(|x| json_leaves(x, numbers, strings)),
        Value::Object(o) => o.values().for_each(|x| json_leaves(x, numbers, strings)),
        _ => {}
    }
}

#[test]
fn text_and_json_carry_the_same_content() {
    let dir = tempfile::tempdir().unwrap();
    for args in [&["hetero", "--exponents", "3,4", "--verify-oracle"][..], &["cubelike", "--levels", "1", "--verify-oracle"][..]] {
        let json_path = dir.path().join("r.json");
        let text_path = dir.path().join("r.txt");
        let mut a = args.to_vec();
        a.extend(["--format", "json", "--output", json_path.to_str().unwrap()]);
        assert_eq!(run(&a).status.code(), Some(0));
        let mut b = args.to_vec();
        b.extend(["--output", text_path.to_str().unwrap()]);
        assert_eq!(run(&b).status.code(), Some(0));
        let report: Value = serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
        let text = std::fs::read_to_string(&text_path).unwrap();
        let (mut nums, mut strs) = (Vec::new(), Vec::new());
        let mut timing_free = report.clone();
        timing_free["seconds"] = Value::Null;
        json_leaves(&timing_free, &mut nums, &mut strs);
        let mut available = numbers_in(&text);
        for n in nums {
            let i = available.iter().position(|&x| x == n).unwrap_or_else(|| panic!("{n} missing from text"));
            available.swap_remove(i);
        }
        for s in strs {
            assert!(text.contains(s.as_str()), "{s} missing from text");
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let (a, _) = json(&["hetero", "--exponents", "3,5", "--threads", "1"]);
    let (b, _) = json(&["hetero", "--exponents", "3,5", "--threads", "4"]);
    assert_eq!(a["spectrum"], b["spectrum"]);
    assert_eq!(a["sc_subgroup"], b["sc_subgroup"]);
}

#[test]
fn oracle_command() {
    let (r, code) = json(&["oracle", "--exponents", "3,4"]);
    assert_eq!((code, r["command"].as_str()), (0, Some("oracle")));
    assert_eq!(r["oracle"]["dense"]["status"], "agree");
    assert_valid(&r);
    let (r, code) = json(&["oracle", "--dims", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["oracle"]["agrees"], true);
    assert_eq!(run(&["oracle"]).status.code(), Some(1));
}
