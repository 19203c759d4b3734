use std::path::PathBuf;
use std::process::{Command, Output};

use matroidlab::matroid::io;
use matroidlab::removal::good_minor;
use matroidlab::tangle::{decomposition_width, DecompositionTree};
use matroidlab::{Matroid, Op};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn load(name: &str) -> Matroid {
    io::from_json_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_matroidlab")).args(args).current_dir(data("")).output().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out, v)
}

fn tree_from_json(m: &Matroid, v: &Value) -> DecompositionTree {
    match v {
        Value::Array(pair) => {
            DecompositionTree::Join(Box::new(tree_from_json(m, &pair[0])), Box::new(tree_from_json(m, &pair[1])))
        }
        label => DecompositionTree::Leaf(m.position_of(label.as_u64().unwrap() as u32).unwrap()),
    }
}

#[test]
fn bw_of_k4_with_reloadable_tree() {
    let (out, v) = run(&["bw", "k4.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["branch_width"], 2);
    assert_eq!(v["result"]["decomposition_width"], 2);
    let m = load("k4.json");
    let tree = tree_from_json(&m, &v["result"]["tree"]);
    assert_eq!(decomposition_width(&m, &tree).unwrap(), 2);
}

#[test]
fn no_order_three_tangle_in_u24() {
    let (out, v) = run(&["tangles", "u24.json", "--order", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["count"], 0);
    let (_, v) = run(&["tangles", "u24.json", "--order", "2"]);
    assert_eq!(v["result"]["count"], 1);
}

#[test]
fn echo_and_digest() {
    let (_, v) = run(&["rank", "k4.json", "--set", "0,1,3"]);
    assert_eq!(v["command"]["name"], "rank");
    assert_eq!(v["result"]["rank"], 2);
    let digest = v["inputs"]["k4.json"].as_str().unwrap();
    assert_eq!(digest.len(), 64);
    let (_, again) = run(&["lambda", "k4.json", "--set", "0,1,3"]);
    assert_eq!(again["inputs"]["k4.json"].as_str(), Some(digest));
    assert_eq!(again["result"]["lambda"], 2);
    let (_, empty) = run(&["rank", "k4.json", "--set", ""]);
    assert_eq!(empty["result"]["rank"], 0);
}

#[test]
fn minor_spec_reloads() {
    let (out, v) = run(&["minor", "u36.json", "--minor", "u24.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["is_minor"], true);
    let m = load("u36.json");
    let spec = io::minor_spec_from_json(&m, &v["result"]["spec"]).unwrap();
    assert!(m.minor(&spec).unwrap().same_as(&load("u24.json")));
}

#[test]
fn splitter_answer_reverifies() {
    let (out, v) = run(&["splitter", "u36.json", "--minor", "u24.json"]);
    assert_eq!(out.status.code(), Some(0));
    let m = load("u36.json");
    let e = m.position_of(v["result"]["element"].as_u64().unwrap() as u32).unwrap();
    let op = if v["result"]["op"] == "delete" { Op::Delete } else { Op::Contract };
    assert!(good_minor(&m.remove_element(op, e).unwrap(), &load("u24.json")).unwrap());
}

#[test]
fn remove_reports_oracle_witness() {
    let (out, v) = run(&["remove", "u36.json", "--minor", "u12.json", "--k", "1", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &v["result"];
    assert_eq!(r["k"], 1);
    let oracle = &r["oracle"];
    assert_eq!(oracle["set"].as_array().unwrap().len(), 1);
    let m = load("u36.json");
    let x = m.subset_from_labels(&[oracle["set"][0].as_u64().unwrap() as u32]).unwrap();
    let op = if oracle["op"] == "delete" { Op::Delete } else { Op::Contract };
    assert!(good_minor(&m.remove_set(op, x).unwrap(), &load("u12.json")).unwrap());
    // the pipeline either answers or reports an exhausted budget
    assert!(r["set"].is_array() || r["budget_exhausted"].is_object());
}

#[test]
fn fans_of_u24() {
    let (_, v) = run(&["fans", "u24.json"]);
    assert_eq!(v["result"]["count"], 1);
    assert_eq!(v["result"]["fans"][0]["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).0.status.code(), Some(2));
    assert_eq!(run(&["bw", "k4.json", "--bogus"]).0.status.code(), Some(2));
    assert_eq!(run(&["bw", "missing.json"]).0.status.code(), Some(2));
    assert_eq!(run(&["rank", "k4.json", "--set", "0,x"]).0.status.code(), Some(2));
    let (out, v) = run(&["lambda", "k4.json", "--set", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(v["error"].as_str().unwrap().contains("label 9"));
    // U(2,4) is not a minor of the graphic K4: a precondition, not a verification failure
    assert_eq!(run(&["splitter", "k4.json", "--minor", "u24.json"]).0.status.code(), Some(2));
}

#[test]
fn ground_set_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_matroidlab"))
        .args(["bw", "k4.json"])
        .current_dir(data(""))
        .env("MATROIDLAB_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_status_tracks_failures() {
    let (out, v) = run(&["verify", "--suite", "core", "--max-n", "6", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(v["result"]["passed"], true);
    assert_eq!(v["result"]["seed"], 3);
    // fan_interior fails on four-element fans, so the connectivity suite exits 1
    let (out, v) = run(&["verify", "--suite", "connectivity", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(v["passed"], false);
}
