mod common;

use std::process::{Command, Output};

fn germlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_germlab")).args(args).output().expect("run germlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("germlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn fixture(name: &str) -> String {
    common::fixture(name).to_string_lossy().into_owned()
}

#[test]
fn analyze_reports() {
    let o = germlab(&["analyze", "--poly", "y^2 - x^3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["multiplicity"]["parity"], 0);
    assert_eq!(doc["k_map"][0]["direction"], "(1, 0)");
    assert_eq!(doc["k_map"][0]["k"], 2);
    assert_eq!(doc["tree"]["shape"], serde_json::json!([2]));
}

#[test]
fn tree_file() {
    let out = std::env::temp_dir().join(format!("germlab-tree-{}.gv", std::process::id()));
    let o = germlab(&["analyze", "--poly", "y*(y^2-x^3)", "--tree-out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&out).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=point").count(), 4);
    assert_eq!(dot.matches("root -> h").count(), 2);
}

#[test]
fn exit_codes() {
    assert_eq!(germlab(&["analyze", "--poly", "x^2+y^2"]).status.code(), Some(3));
    assert_eq!(germlab(&["analyze", "--poly", "y^2 - x^"]).status.code(), Some(2));
    assert_eq!(germlab(&["analyze", "--poly", "y + z"]).status.code(), Some(2));
    assert_eq!(germlab(&["analyze", "--poly", "x^2+y^2-1"]).status.code(), Some(3));
    assert_eq!(germlab(&["analyze"]).status.code(), Some(2));
    assert_eq!(germlab(&["link", "--file", "/nonexistent/link.json"]).status.code(), Some(2));
}

#[test]
fn oracle_section() {
    let o = germlab(&["analyze", "--poly", "y*(y^2 - x^3)", "--oracle", "--json", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["oracle"]["parity"], 1);
    assert_eq!(doc["oracle"]["agrees"], true);
    assert_eq!(doc["oracle"]["tangent_check"]["ok"], true);
    let p = tmp("branch.json", r#"{"branches": [["t", "t^2"]]}"#);
    assert_eq!(germlab(&["analyze", "--param", &p, "--oracle"]).status.code(), Some(2));
}

#[test]
fn compare() {
    assert_eq!(germlab(&["compare", "--poly", "y", "--poly", "y^3 - x^2"]).status.code(), Some(1));
    let p = tmp("parabola.json", r#"{"branches": [["t", "t^2"]]}"#);
    let o = germlab(&["compare", "--poly", "y", "--param", &p, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["bs_equivalent"], true);
    assert_eq!(doc["left"], "y");
    let o = germlab(&["compare", "--param", &p, "--poly", "y", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["right"], "y");
    assert_eq!(germlab(&["compare", "--poly", "y^2-x^3", "--poly", "y^2-x^3"]).status.code(), Some(0));
    assert_eq!(germlab(&["compare", "--poly", "y"]).status.code(), Some(2));
}

#[test]
fn realize() {
    let a = tmp("a.json", "[[0,0,1]]");
    let o = germlab(&["realize", "--invariant", &a]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(y-x)^2-(y+x)^3");
    let b = tmp("b.json", r#"{"rows": [[0,1,0]]}"#);
    let o = germlab(&["realize", "--invariant", &b, "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("round-trip: OK"));
    let c = tmp("c.json", "[[1,0,0]]");
    assert_eq!(germlab(&["realize", "--invariant", &c]).status.code(), Some(2));
    let d = tmp("d.json", "not json");
    assert_eq!(germlab(&["realize", "--invariant", &d]).status.code(), Some(2));
}

#[test]
fn link_commands() {
    let o = germlab(&["link", "--file", &fixture("cone"), "--diameter", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["diameter"]["value"], 2);
    let o = germlab(&["link", "--file", &fixture("one_great_circle"), "--parity", "--json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["parity"]["parity"], 1);
    let o = germlab(&["link", "--file", &fixture("crossed_cones"), "--nac", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["nac"]["value"], 4);
    assert_eq!(doc["nac"]["witness"].as_array().unwrap().len(), 4);
    let o = germlab(&["link", "--file", &fixture("one_great_circle"), "--parity", "--lambda", "1,2,0"]);
    assert_eq!(o.status.code(), Some(4));
    let o = germlab(&["link", "--file", &fixture("one_great_circle"), "--parity", "--lambda", "1/2,1/3,3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn link_preconditions() {
    let small = tmp(
        "small.json",
        r#"{"circles": [[["4/5","0","3/5"],["0","4/5","3/5"],["-4/5","0","3/5"]]]}"#,
    );
    let o = germlab(&["link", "--file", &small, "--antipodal", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["antipodal"]["invariant"], false);
    assert_eq!(germlab(&["link", "--file", &small, "--nac"]).status.code(), Some(4));
    let bad = tmp("bad.json", r#"{"circles": [[["1/2","0","0"],["0","1","0"],["-1","0","0"]]]}"#);
    assert_eq!(germlab(&["link", "--file", &bad]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_germlab"))
        .args(["link", "--file", &fixture("two_orthogonal"), "--nac"])
        .env("GERMLAB_CYCLE_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(4));
    assert!(stdout(&capped).contains("lower bound"));
}

#[test]
fn deterministic_output() {
    let runs = [
        vec!["analyze", "--poly", "y*(y^2 - x^3)*(x^2+y^2)", "--json", "--oracle"],
        vec!["link", "--file", "FIXTURE", "--euler", "--diameter", "--parity", "--nac", "--antipodal", "--json"],
    ];
    let fx = fixture("two_orthogonal");
    for args in runs {
        let args: Vec<&str> = args.iter().map(|a| if *a == "FIXTURE" { fx.as_str() } else { a }).collect();
        let a = germlab(&args);
        let b = germlab(&args);
        let mut seq = args.clone();
        seq.push("--sequential");
        let c = germlab(&seq);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, c.stdout);
        assert_eq!(a.status.code(), Some(0));
    }
}
