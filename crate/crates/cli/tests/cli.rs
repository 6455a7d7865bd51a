use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicirc")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn smith_of_the_three_dimensional_example() {
    let v = json(&["snf", "-m", "2,0,0;0,2,0;0,0,3"]);
    assert_eq!(v["S"], serde_json::json!([1, 2, 6]));
    assert_eq!(v["divisors"], serde_json::json!([1, 2, 12]));
}

#[test]
fn json_matrix_input_is_accepted() {
    let v = json(&["snf", "-m", "[[2,0,0],[0,2,0],[0,0,3]]"]);
    assert_eq!(v["S"], serde_json::json!([1, 2, 6]));
}

#[test]
fn circulant_test_reports_rule() {
    let v = json(&["is-circulant", "-m", "2,0;0,4", "--jumps", "1,0|0,1", "--mode", "digraph"]);
    assert_eq!(v["is_circulant"], false);
    assert_eq!(v["rule"], "none_holds");
}

#[test]
fn element_order() {
    let v = json(&["order", "-m", "2,0;0,6", "-a", "1,1"]);
    assert_eq!(v["order"], 6);
    let out = run(&["order", "-m", "2,0;0,6", "-a", "-1,1", "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "6");
}

#[test]
fn group_summary_and_elements() {
    let v = json(&["group", "-m", "2,0,0;0,2,0;0,0,3", "--elements"]);
    assert_eq!(v["order"], 12);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 6]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 12);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["build", "-m", "2,1;0,3", "--jumps", "1,0|0,1", "--mode", "graph"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["dimension", "-m", "3,0;0,3", "--jumps", "1,0|0,1", "--exact"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn build_exports_edge_list_and_dot() {
    let v = json(&["build", "-m", "4", "--jumps", "1"]);
    assert_eq!(v["graph"]["n_vertices"], 4);
    assert_eq!(v["graph"]["directed"], true);
    assert_eq!(v["graph"]["edges"].as_array().unwrap().len(), 4);
    let out = run(&["build", "-m", "4", "--jumps", "1", "--mode", "graph", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("graph G {"));
    assert_eq!(dot.matches(" -- ").count(), 4);
}

#[test]
fn components_and_reduction() {
    let v = json(&["components", "-m", "4,0;0,2", "--jumps", "2,0|0,1"]);
    assert_eq!(v["alpha"], 2);
    assert_eq!(v["reduction"]["alpha"], 2);
}

#[test]
fn product_of_two_cycles() {
    let v = json(&["product", "-m", "3", "--jumps", "1", "-m", "5", "--jumps", "1"]);
    assert_eq!(v["group"]["order"], 15);
    assert_eq!(v["group"]["invariant_factors"], serde_json::json!([15]));
}

#[test]
fn adam_canonical_form() {
    let v = json(&["adam-canon", "-m", "2,0,0;0,2,0;0,0,3", "--jumps", "1,0,0|0,1,0|0,0,2"]);
    assert_eq!(v["factors"], serde_json::json!([2, 6]));
    assert_eq!(v["jumps"].as_array().unwrap().len(), 3);
}

#[test]
fn directions_from_a_graph_file() {
    let built = json(&["build", "-m", "3,0;0,3", "--jumps", "1,0|0,1", "--mode", "graph"]);
    let dir = std::env::temp_dir().join(format!("multicirc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k3k3.json");
    std::fs::write(&path, built["graph"].to_string()).unwrap();
    let v = json(&["directions", "--graph", path.to_str().unwrap(), "--method", "neighbourhood"]);
    assert_eq!(v["n_directions"], 2);
    assert_eq!(v["factor_sizes"], serde_json::json!([3, 3]));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn bounds_and_dimension() {
    let v = json(&["bounds", "-m", "2,0;0,4", "--jumps", "1,0|0,1"]);
    assert_eq!(v["snf_rank_bound"], 2);
    let v = json(&["dimension", "-m", "2,0;0,4", "--jumps", "1,0|0,1", "--exact"]);
    assert_eq!(v["exact_dimension"]["value"], 2);
    assert_eq!(v["bruteforce_dimension"], 2);
}

#[test]
fn cap_limits_the_exhaustive_search() {
    let out = run(&["dimension", "-m", "3,0;0,3", "--jumps", "1,0|0,1", "--exact", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceed the oracle limit of 4"));
}

#[test]
fn exit_codes() {
    let out = run(&["snf", "-m", "1,2;3,x"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("MatrixError") && err.contains("position 6"), "{err}");

    let out = run(&["group", "-m", "1,2;2,4"]);
    assert_eq!(out.status.code(), Some(1));

    assert_eq!(run(&["snf"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["snf", "-m", "2", "--format", "dot"]).status.code(), Some(2));
    let out = run(&["build", "-m", "4", "--jumps", "1", "--mode", "sideways"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--mode"));
}

#[test]
fn verify_selected_criteria() {
    let v = json(&["verify", "--only", "1,2,5,7"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 4);
}
