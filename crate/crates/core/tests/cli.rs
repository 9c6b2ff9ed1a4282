use std::path::PathBuf;

use serde_json::{json, Value};
use sinkopt::cli::{dispatch, Outcome};

struct Fixture {
    _dir: tempfile::TempDir,
    path: PathBuf,
}

fn edges(text: &str) -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    std::fs::write(&path, text).unwrap();
    Fixture { _dir: dir, path }
}

fn p3() -> Fixture {
    edges("# path on three nodes\n1 2\n2 3\n")
}

fn run(f: &Fixture, args: &[&str]) -> Outcome {
    let mut argv = vec!["sinkopt", "--graph", f.path.to_str().unwrap()];
    argv.extend(args);
    dispatch(argv)
}

fn ok_json(f: &Fixture, args: &[&str]) -> Value {
    let out = run(f, args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["schema"], "sinkopt/1");
    v
}

fn error_code(out: &Outcome) -> String {
    assert_eq!(out.code, 1, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn solve_on_path() {
    let v = ok_json(&p3(), &["solve", "--k", "2", "--nu", "0.8"]);
    assert_eq!(v["command"], "solve");
    assert_eq!(v["offered"]["set"], json!([1, 2]));
    assert_eq!(v["offered"]["F"], json!(1.0));
    assert_eq!(v["m"], 1);
    assert_eq!(v["chi"], json!(0.0));
}

#[test]
fn oracle_on_path() {
    let v = ok_json(&p3(), &["oracle", "--k", "1"]);
    assert_eq!(v["set"], json!([2]));
    assert_eq!(v["F"], json!(2.0));
}

#[test]
fn missing_graph_is_a_usage_error() {
    let out = dispatch(["sinkopt", "oracle", "--k", "1"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert!(out.stderr.contains("--graph"));
    assert!(out.stderr.contains("Usage"));
}

#[test]
fn seed_only_on_monte_carlo_commands() {
    let f = p3();
    assert_eq!(run(&f, &["greedy", "--k", "1", "--seed", "3"]).code, 2);
    assert_eq!(run(&f, &["oracle", "--k", "1", "--seed", "3"]).code, 2);
    assert_eq!(run(&f, &["hit", "--set", "1", "--seed", "3"]).code, 2);
    let v = ok_json(&f, &["hit", "--set", "1", "--mc-walks", "2000", "--seed", "3"]);
    assert_eq!(v["monte_carlo"]["seed"], 3);
    let v = ok_json(&f, &["simulate", "--set", "1", "--walks", "2000", "--seed", "3"]);
    assert_eq!(v["estimates"].as_array().unwrap().len(), 2);
}

#[test]
fn hit_report() {
    let v = ok_json(&p3(), &["hit", "--set", "1"]);
    assert_eq!(v["target"], json!([1]));
    assert_eq!(v["h"], json!({"2": 3.0, "3": 4.0}));
    assert_eq!(v["F"], json!(7.0));
    let r = v["spectral_radius"].as_f64().unwrap();
    assert!((r - 0.5f64.sqrt()).abs() < 1e-9);
}

#[test]
fn rank_report() {
    let v = ok_json(&p3(), &["rank", "--set", "2"]);
    assert_eq!(v["C"], 2);
    assert_eq!(v["F_max"], json!(7.0));
    assert_eq!(v["F_min"], json!(1.0));
    assert_eq!(v["F_empty"], json!(13.0));
    assert_eq!(v["exact_empty"], json!(true));
    assert_eq!(v["rho_bar"], json!(0.833333333333));
    let v = ok_json(&p3(), &["rank", "--set", "1,3"]);
    assert_eq!(v["rho_bar"], json!(1.0));
}

#[test]
fn cover_report() {
    let v = ok_json(&edges("1 2\n2 3\n3 4\n4 1\n"), &["cover"]);
    assert_eq!(v["matching"], json!([[1, 2], [3, 4]]));
    assert_eq!(v["cover"], json!([1, 2, 3, 4]));
    assert_eq!(v["C"], 4);
    assert_eq!(v["F_of_cover"], json!(0.0));
}

#[test]
fn candidates_report() {
    let v = ok_json(&p3(), &["candidates", "--nu", "0.8"]);
    assert_eq!(v["m"], 1);
    assert_eq!(v["members"].as_array().unwrap().len(), 4);
    assert_eq!(v["members"][0]["set"], json!([2]));
    assert_eq!(v["g3_closure"]["violation_count"], 0);
    assert_eq!(v["greedoid_report"]["built"], json!(true));
    let out = run(&p3(), &["candidates", "--nu", "1.5"]);
    assert_eq!(error_code(&out), "InvalidThreshold");
    assert_eq!(run(&p3(), &["candidates", "--nu", "0.5", "--mode", "bogus"]).code, 2);
}

#[test]
fn greedy_and_backward() {
    let v = ok_json(&p3(), &["greedy", "--k", "2"]);
    assert_eq!(v["result"]["set"], json!([1, 2]));
    assert_eq!(v["trace"], json!([{"added": 2, "F": 2.0}, {"added": 1, "F": 1.0}]));
    let c4 = edges("1 2\n2 3\n3 4\n4 1\n");
    let v = ok_json(&c4, &["backward", "--k", "2"]);
    assert_eq!(v["target"], json!([1, 2, 3, 4]));
    assert_eq!(v["result"]["set"], json!([2, 4]));
    let v = ok_json(&p3(), &["backward", "--k", "1", "--target", "1,2"]);
    assert_eq!(v["result"]["set"], json!([2]));
    assert_eq!(error_code(&run(&p3(), &["backward", "--k", "2"])), "TargetTooSmall");
}

#[test]
fn compare_with_oracle() {
    let v = ok_json(&p3(), &["compare", "--k", "2", "--nu", "0.8", "--with-oracle"]);
    assert_eq!(v["oracle"]["F"], json!(1.0));
    assert_eq!(v["bound_checks"]["offered_ratio"], json!(true));
    assert_eq!(v["chi"], json!(0.0));
}

#[test]
fn starter_method_refuses_k_below_m() {
    let out = run(&p3(), &["solve", "--k", "1", "--nu", "1.0"]);
    assert_eq!(error_code(&out), "KBelowMinimum");
    assert!(out.stderr.contains("backward"));
}

#[test]
fn curvature_and_bounds() {
    let g = edges("1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n1 4\n");
    let v = ok_json(&g, &["curvature", "--nu", "0.5"]);
    let kappa = v["kappa"].as_f64().unwrap();
    assert!((0.0..=1.0 + 1e-9).contains(&kappa));
    assert!(v["arg_kappa"]["A"].is_array());
    let v = ok_json(&g, &["bounds", "--nu", "0.5", "--k", "2"]);
    assert_eq!(v["k"], 2);
    assert!(v["rho_greedy"].is_number());
    assert_eq!(run(&g, &["bounds", "--nu", "0.5", "--k", "2", "--format", "csv"]).code, 2);
}

#[test]
fn csv_rows() {
    let out = run(&p3(), &["solve", "--k", "2", "--nu", "0.8", "--format", "csv"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "set,F,rho,method\n1 2,1,2,starter\n1 2,1,2,greedy\n");
}

#[test]
fn input_errors_exit_one() {
    let out = run(&edges("1 2\n3 4\n"), &["cover"]);
    assert_eq!(error_code(&out), "Disconnected");
    let out = run(&edges("1 1\n"), &["cover"]);
    assert_eq!(error_code(&out), "SelfLoop");
    let out = run(&edges("1 2 3\n"), &["cover"]);
    assert_eq!(error_code(&out), "MalformedLine");
    let out = run(&p3(), &["hit", "--set", "9"]);
    assert_eq!(error_code(&out), "UnknownLabel");
    let out = dispatch(["sinkopt", "--graph", "/nonexistent/g.edges", "cover"]);
    assert_eq!(error_code(&out), "Io");
    assert_eq!(run(&p3(), &["hit", "--set", "x"]).code, 2);
}

#[test]
fn duplicate_edges_warn() {
    let out = run(&edges("1 2\n2 1\n2 3\n"), &["cover"]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("duplicate"));
}

#[test]
fn help_exits_zero() {
    let out = dispatch(["sinkopt", "--help"]);
    assert_eq!(out.code, 0);
    for cmd in ["hit", "rank", "cover", "candidates", "greedy", "solve", "backward", "oracle", "compare", "curvature", "bounds", "simulate"] {
        assert!(out.stdout.contains(cmd), "{cmd}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let g = edges("1 2\n2 3\n3 4\n4 5\n5 1\n1 3\n");
    let a = run(&g, &["--threads", "1", "compare", "--k", "2", "--nu", "0.6", "--with-oracle"]);
    let b = run(&g, &["--threads", "4", "compare", "--k", "2", "--nu", "0.6", "--with-oracle"]);
    assert_eq!(a, b);
}
