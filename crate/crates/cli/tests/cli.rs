use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normset-lab"))
        .args(args)
        .env_remove("NORMSET_LAB_BOUND")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, String, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (value, text, out.status.code().unwrap())
}

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

#[test]
fn json_output_round_trips_byte_identically() {
    for args in [
        vec!["classgroup", "--d", "-5"],
        vec!["ufd", "--d", "-163"],
        vec!["norm", "--d", "2", "--elem", "1+w"],
        vec!["normset", "atoms", "--d", "-5", "--bound", "50"],
        vec!["davenport", "--group", "3,3"],
        vec!["hfd", "--d", "-3", "--n", "2"],
    ] {
        let (value, text, code) = json(&args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(value["schema_version"], 1);
        assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", text, "{args:?}");
    }
}

#[test]
fn class_group_of_minus_five() {
    let (v, _, _) = json(&["classgroup", "--d", "-5"]);
    assert_eq!(v["class_number"], 2);
    assert_eq!(v["discriminant"], -20);
}

#[test]
fn ufd_report_lists_split_primes() {
    let (v, _, _) = json(&["ufd", "--d", "-163"]);
    assert_eq!(v["verdict"], true);
    assert!(v["primes"].as_array().is_some_and(|p| !p.is_empty()));
}

#[test]
fn normset_membership_and_factorization() {
    let (v, _, code) = json(&["normset", "member", "--d", "-5", "--value", "7"]);
    assert_eq!((v["answer"].as_str(), code), (Some("no"), 0));
    let (v, _, _) = json(&["normset", "member", "--d", "-5", "--value", "9"]);
    assert_eq!(v["answer"], "yes");
    let (v, _, _) = json(&["normset", "factor", "--d", "-5", "--value", "36"]);
    assert!(v["factorizations"].as_array().unwrap().len() >= 2);
}

#[test]
fn elasticity_of_minus_fourteen() {
    let (v, _, _) = json(&["elasticity", "--d", "-14", "--bound", "400"]);
    assert_eq!(v["davenport"], "2");
    assert_eq!(v["ring_window"], "3/2");
}

#[test]
fn bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_normset-lab"))
        .args(["normset", "atoms", "--d", "-1", "--format", "json"])
        .env("NORMSET_LAB_BOUND", "20")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], 20);
    let out = Command::new(env!("CARGO_BIN_EXE_normset-lab"))
        .args(["normset", "atoms", "--d", "-1"])
        .env("NORMSET_LAB_BOUND", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["classgroup", "--d", "4"],
        vec!["classgroup"],
        vec!["saturation", "--d", "2", "--bound", "3"],
        vec!["norm", "--d", "-1", "--elem", "x"],
        vec!["davenport", "--group", "3,a"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn exhausted_depth_exits_two() {
    let file = data("sequence_domain.val");
    let (v, _, code) = json(&["valnet", &file, "factor", "w2", "--depth", "8"]);
    assert_eq!(code, 2);
    assert_eq!(v["unknown"], true);
    assert_eq!(v["result"]["outcome"], "depth_exhausted");
    let (v, _, code) = json(&["valnet", &file, "factor", "q1"]);
    assert_eq!((code, v["result"]["outcome"].as_str()), (0, Some("found")));
}

#[test]
fn valnet_queries_on_a_finite_index_set() {
    let file = data("two_valuations.val");
    let (v, _, _) = json(&["valnet", &file, "sb", "(2,1)"]);
    assert_eq!(v["result"]["complete"], true);
    let (v, _, _) = json(&["valnet", &file, "member", "(0,1/2)"]);
    assert_eq!(v["result"], false);
    assert_eq!(run(&["valnet", &file, "factor", "(1,1)", "(1,1)"]).status.code(), Some(1));
}

#[test]
fn text_output_is_key_value_lines() {
    let out = run(&["davenport", "--group", "2,2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "value: 3"), "{text}");
}

#[test]
fn exit_code_follows_the_unknown_flag() {
    let file = data("sequence_domain.val");
    let mut cases: Vec<Vec<String>> = Vec::new();
    for d in ["-5", "-14", "2", "34"] {
        for n in ["1", "2", "3"] {
            for value in ["-9", "6", "45", "97", "1000003"] {
                cases.push(["normset", "member", "--d", d, "--n", n, "--value", value].map(String::from).to_vec());
            }
        }
    }
    for d in ["-3", "-5", "-7"] {
        for n in ["1", "2", "3"] {
            cases.push(["hfd", "--d", d, "--n", n].map(String::from).to_vec());
        }
    }
    for depth in ["1", "5", "60"] {
        for net in ["w1", "q1", "1:2 3:1"] {
            cases.push(["valnet", &file, "factor", net, "--depth", depth].map(String::from).to_vec());
        }
    }
    for case in cases {
        let args: Vec<&str> = case.iter().map(String::as_str).collect();
        let (v, _, code) = json(&args);
        let expected = if v["unknown"] == true { 2 } else { 0 };
        assert_eq!(code, expected, "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let (v, _, _) = json(&["ufd", "--d", "-1"]);
    assert_eq!((v["verdict"].clone(), v["primes"].clone()), (Value::Bool(true), serde_json::json!([])));
    let (v, _, _) = json(&["normset", "factor", "--d", "-41", "--value", "2025"]);
    assert_eq!(v["lengths"], serde_json::json!([2, 3]));
    let (v, _, _) = json(&["davenport", "--group", "3,3"]);
    assert_eq!(v["value"], 5);
}
