use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steadycert")).args(args).output().expect("spawn steadycert")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn steady_states_rep3d() {
    let o = run(&["steady-states", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["seed"], 42);
    let states = v["result"]["states"].as_array().unwrap();
    let b = states.iter().find(|s| s["label"] == "B").unwrap();
    assert_eq!(b["positive"], true);
    for x in b["coords"].as_array().unwrap() {
        assert!((x.as_f64().unwrap() - 2.438711).abs() < 1e-6);
    }
    let a = states.iter().find(|s| s["label"] == "A").unwrap();
    assert_eq!(a["positive"], false);
}

#[test]
fn certify_bwd6d_samples() {
    let o = run(&["certify", "--model", "bwd6d", "--samples", "10", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_eq!(v["result"]["flags"]["unique_positive"], true);
    assert_eq!(v["result"]["flags"]["no_positive_on_j1"], true);
    assert_eq!(v["seed"], 1);
}

#[test]
fn certify_rep3d_with_allwright() {
    let o = run(&["certify", "--model", "rep3d", "--samples", "5", "--allwright"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    let checks = v["result"]["allwright"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["holds"] == true));
}

#[test]
fn simulate_without_init_is_a_usage_error() {
    let o = run(&["simulate", "--model", "rep3d"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn simulate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("traj.csv");
    let o = run(&[
        "simulate", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6", "--init", "1,2,2", "--t-end", "40", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3"));
    let last: Vec<f64> = text.lines().last().unwrap().split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(last[0], 40.0);
    assert!(last[1..].iter().all(|x| (x - 2.438711).abs() < 1e-3));
}

#[test]
fn outputs_are_reproducible() {
    let args = ["hopf-scan", "--model", "rep3d", "--grid", "s:1e-2:1e2:3,b:1e-2:1e2:3,g:1e-2:1e2:3", "--log", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["result"]["witnesses"].as_array().unwrap().len(), 0);
}

#[test]
fn rejects_bad_parameters_and_config() {
    let o = run(&["stability", "--model", "rep3d", "--params", "s=0,b=4,g=0.6"]);
    assert_eq!(o.status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, "{\"model\": \"rep3d\", ").unwrap();
    let o = run(&["stability", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["stability", "--model", "rep3d", "--params", "s=1", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn stability_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p.json");
    std::fs::write(&cfg, r#"{"model": "bwd6d", "params": {"s": "1", "b": "10", "g": "1/5"}}"#).unwrap();
    let o = run(&["stability", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json_of(&o)["result"]["verdict"], "asymptotically-stable");
}

#[test]
fn decomposition_quotient() {
    let o = run(&["verify-decomposition", "--which", "quotient", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["result"]["all_passed"], true);
    assert_eq!(run(&["verify-decomposition", "--which", "K"]).status.code(), Some(1));
}

#[test]
fn groebner_of_a_small_ideal() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("ideal.json");
    let ideal = r#"{"vars": ["x", "y"], "generators": [
        {"vars": ["x", "y"], "terms": [{"c": "1", "e": [2, 0]}, {"c": "1", "e": [0, 2]}, {"c": "-1", "e": [0, 0]}]},
        {"vars": ["x", "y"], "terms": [{"c": "1", "e": [1, 0]}, {"c": "-1", "e": [0, 1]}]}
    ]}"#;
    std::fs::write(&input, ideal).unwrap();
    let o = run(&["groebner", "--input", input.to_str().unwrap(), "--order", "lex", "--reduce"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert_eq!(v["result"]["unit"], false);
    assert_eq!(v["result"]["basis"]["generators"].as_array().unwrap().len(), 2);
}

#[test]
fn sweep_csv_rows() {
    let o = run(&["sweep", "--model", "rep3d", "--grid", "s:0.2:0.4:2,b:4:4:1,g:0.6:0.6:1", "--x0", "fixed:1,2,2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().contains("asymptotically-stable"));
}
