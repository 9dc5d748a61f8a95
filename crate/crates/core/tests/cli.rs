use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gdesign"))
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Runs with `--json <tmp>`, validates the report against `schema_name`, and
/// returns the process output with the parsed report.
fn run(args: &[&str], schema_name: &str) -> (Output, Value) {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("out.json");
    let out = bin().args(args).arg("--json").arg(&path).output().unwrap();
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("no JSON written for {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    let report: Value = serde_json::from_str(&text).unwrap();
    if let Err(e) = jsonschema::validate(&schema(schema_name), &report) {
        panic!("{args:?} output violates {schema_name}.json: {e}");
    }
    (out, report)
}

#[test]
fn schemas_are_valid_documents() {
    for name in ["catalog", "spectrum", "verify", "search", "bound", "weights", "reproduce", "error"] {
        assert!(jsonschema::meta::is_valid(&schema(name)), "{name}.json");
    }
}

#[test]
fn catalog_lists_every_graph() {
    let (out, report) = run(&["catalog"], "catalog");
    assert!(out.status.success());
    assert_eq!(report["graphs"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_nauru_design() {
    let (out, report) = run(&["verify", "--graph", "nauru", "--subset", "0,3,7,10,14,17", "--equal-weights"], "verify");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report["report"]["K"], 19);
    assert_eq!(report["certificate"]["passed"], true);
}

#[test]
fn verify_consecutive_run_is_weaker() {
    let (out, report) = run(&["verify", "--graph", "nauru", "--subset", "0,1,2,3,4,5", "--equal-weights"], "verify");
    assert_eq!(out.status.code(), Some(0));
    assert!(report["report"]["K"].as_u64().unwrap() < 19);
}

#[test]
fn verify_expectation_failure_exits_one() {
    let (out, _) = run(&["verify", "--graph", "nauru", "--subset", "0,1,2,3,4,5", "--expect-k", "19"], "verify");
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_weighted_and_signed() {
    let (out, report) = run(&["verify", "--graph", "petersen", "--subset", "3,0", "--weights", "1/4,3/4"], "verify");
    assert!(out.status.success());
    // Weights follow the order the vertices were given in.
    assert_eq!(report["weights"], serde_json::json!([0.75, 0.25]));
    let (out, report) = run(&["verify", "--graph", "petersen", "--subset", "0,1", "--weights", "3/2,-1/2"], "verify");
    assert!(out.status.success());
    assert!(report["certificate"].is_null());
    assert!(report["certificate_skipped"].as_str().unwrap().contains("positive"));
}

#[test]
fn brute_force_frucht() {
    let (out, report) = run(&["search", "brute", "--graph", "frucht", "--size", "4"], "search");
    assert!(out.status.success());
    assert_eq!(report["result"]["best_k"], 11);
    assert_eq!(report["result"]["witnesses"], serde_json::json!([[5, 6, 10, 11]]));
    assert_eq!(report["verified"], true);
}

#[test]
fn budget_exceeded_is_a_usage_error() {
    let (out, report) = run(&["search", "brute", "--graph", "gosset", "--size", "8"], "error");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report["error"]["code"], "budget_exceeded");
}

#[test]
fn local_searches_are_seeded() {
    let args = ["search", "heat", "--graph", "nauru", "--size", "6", "--seed", "3", "--runs", "4"];
    let (_, a) = run(&args, "search");
    let (_, b) = run(&args, "search");
    assert_eq!(a, b);
    assert_eq!(a["steps"], 2);
    let (out, d) = run(&["search", "distance", "--graph", "nauru", "--size", "6", "--runs", "20"], "search");
    assert!(out.status.success());
    assert!(d["result"]["best_k"].as_u64().unwrap() <= 19);
}

#[test]
fn bound_wong_design() {
    let (out, report) = run(&["bound", "--graph", "wong", "--subset", "2,9,14,21,26"], "bound");
    assert!(out.status.success());
    assert_eq!(report["profile"]["size_at_radius"][1], 30);
    assert_eq!(report["certificate"]["passed"], true);
    let (out, report) = run(&["bound", "--lcf", "[3]^6", "--subset", "0", "--lambda", "0.5"], "bound");
    assert!(out.status.success());
    assert_eq!(report["certificate"]["lambda_source"], "override");
}

#[test]
fn bound_rejects_irregular_without_override() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("star.edges");
    std::fs::write(&path, "4 3\n0 1\n0 2\n0 3\n").unwrap();
    let p = path.to_str().unwrap();
    let (out, report) = run(&["bound", "--edgelist", p, "--subset", "0"], "error");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report["error"]["code"], "non_regular");
    let (out, _) = run(&["bound", "--edgelist", p, "--subset", "0", "--allow-non-regular"], "bound");
    assert!(out.status.success());
}

#[test]
fn weights_commands() {
    let (out, report) = run(&["weights", "minor", "--graph", "petersen", "--k", "5"], "weights");
    assert!(out.status.success());
    assert_eq!(report["verified"], true);
    let (out, report) = run(&["weights", "solve", "--graph", "petersen", "--subset", "0,1", "--targets", "0,1"], "weights");
    assert!(out.status.success());
    let w: Vec<f64> = serde_json::from_value(report["solution"]["weights"].clone()).unwrap();
    assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-10);
}

#[test]
fn graph_sources_agree() {
    let dir = TempDir::new().unwrap();
    let g6: PathBuf = dir.path().join("k4.g6");
    std::fs::write(&g6, "C~\n").unwrap();
    let (_, a) = run(&["spectrum", "--graph6", g6.to_str().unwrap()], "spectrum");
    let el = dir.path().join("k4.edges");
    std::fs::write(&el, "# K4\n4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap();
    let (_, b) = run(&["spectrum", "--edgelist", el.to_str().unwrap(), "--vectors"], "spectrum");
    assert_eq!(a["spectrum"]["eigenvalues"], b["spectrum"]["eigenvalues"]);
    assert_eq!(a["check_passed"], true);
    assert!(b["spectrum"]["eigenvectors"].is_array());
}

#[test]
fn usage_errors_exit_two() {
    let out = bin().args(["verify", "--graph", "nauru", "--lcf", "[3]^6", "--subset", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "--subset", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["verify", "--graph", "nauru", "--subset", "0", "--eps-int", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let (out, report) = run(&["verify", "--graph", "nauru", "--subset", "0,99"], "error");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report["error"]["code"], "vertex_out_of_range");
    let (out, report) = run(&["spectrum", "--lcf", "[3]^4"], "error");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report["error"]["code"], "lcf");
}

#[test]
fn json_to_stdout_is_clean() {
    let out = bin().args(["verify", "--graph", "frucht", "--subset", "5,6,10,11", "--json", "-"]).output().unwrap();
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["report"]["K"], 11);
    assert!(String::from_utf8_lossy(&out.stderr).contains("K = 11"));
}

#[test]
fn dot_marks_design_vertices() {
    let dir = TempDir::new().unwrap();
    let dot = dir.path().join("w.dot");
    let out = bin()
        .args(["verify", "--graph", "frucht", "--subset", "5,6,10,11", "--dot"])
        .arg(&dot)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("doublecircle").count(), 4);
}

#[test]
fn reproduce_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let out = bin().args(["reproduce", "--only", "fig-2,fig-8,table-meringer", "--json"]).arg(p).output().unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let report: Value = serde_json::from_slice(&a).unwrap();
    jsonschema::validate(&schema("reproduce"), &report).unwrap();
    assert_eq!(report["claims"][2]["agreement"], "exceeds");
}
