use std::process::{Command, Output};

use serde_json::Value;

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = klr(&all);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (value, out.status.code().unwrap())
}

#[test]
fn datum_reports_the_matrix() {
    let (v, code) = json(&["datum", "a2.json"]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"], serde_json::json!([[2, -1], [-1, 2]]));
    assert_eq!(v["real_vertices"], serde_json::json!(["i", "j"]));
    let (v, _) = json(&["datum", "jordan.json"]);
    assert_eq!(v["matrix"], serde_json::json!([[0]]));
    assert_eq!(v["imaginary_vertices"], serde_json::json!(["i"]));
}

#[test]
fn missing_file_exits_with_two() {
    let out = klr(&["datum", "no_such_quiver.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_quiver.json"));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_alpha_exits_with_two() {
    let out = klr(&["verify", "a2.json", "--alpha", "{\"k\":1}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn quiver_is_read_from_disk() {
    let dir = std::env::temp_dir().join(format!("klr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two_vertices.json");
    std::fs::write(&path, r#"{"vertices":["u","v"],"edges":[{"id":"e","from":"u","to":"v"},{"id":"f","from":"v","to":"u"}]}"#)
        .unwrap();
    let (v, code) = json(&["datum", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["matrix"], serde_json::json!([[2, -2], [-2, 2]]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exact_verify_passes_on_jordan() {
    let (v, code) = json(&["verify", "jordan.json", "--alpha", "2i"]);
    assert_eq!(code, 0);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["backend"], "exact");
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["relations"].as_array().unwrap().iter().all(|r| r["status"] == "verified"));
}

#[test]
fn randomized_verify_reports_a_failure_bound() {
    let (v, code) = json(&["verify", "a2.json", "--alpha", "i+j", "--backend", "randomized", "--seed", "9"]);
    assert_eq!(code, 0);
    assert_eq!(v["backend"], "randomized");
    assert_eq!(v["seed"], 9);
    assert_eq!(v["points"], 3);
    let bound = v["failure_bound"].as_f64().unwrap();
    assert!(bound > 0.0 && bound < 1e-20);
}

#[test]
fn corrupted_fixture_fails_with_a_counterexample() {
    let (v, code) = json(&["verify", "a2_q_sign_flip.json", "--alpha", "i+j"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["summary"]["failed"], 2);
    let first = &v["first_failure"];
    assert_eq!(first["relation"], "r2");
    assert!(first["counterexample"]["lhs"].is_string());
    let out = klr(&["verify", "a2_q_sign_flip.json", "--alpha", "i+j"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("first failure"));
}

#[test]
fn height_cap_is_a_usage_error() {
    let out = klr(&["verify", "a1.json", "--alpha", "9i", "--backend", "randomized"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gdim_matches_on_every_block() {
    let (v, code) = json(&["gdim", "a2.json", "--alpha", "i+j", "--seed", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["seeds"], serde_json::json!([4, 5, 6]));
    let blocks = v["blocks"].as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    assert!(blocks.iter().all(|b| b["match"] == true));
}

#[test]
fn gdim_single_block() {
    let (v, code) = json(&["gdim", "jordan.json", "--alpha", "2i", "--nu-out", "i,i", "--nu-in", "[\"i\",\"i\"]"]);
    assert_eq!(code, 0);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
}

#[test]
fn cyclo_desk_case() {
    let (v, code) = json(&["cyclo", "a1.json", "--alpha", "i", "--lambda", "i"]);
    assert_eq!(code, 0);
    assert_eq!(v["total_quotient"], 1);
    assert_eq!(v["stable"], true);
    let (v, _) = json(&["cyclo", "a1.json", "--alpha", "2i", "--lambda", "{\"i\":1}"]);
    assert_eq!(v["total_quotient"], 0);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "loop_edge.json", "--alpha", "i+j", "--backend", "randomized", "--trials", "2", "--format", "json"];
    let a = klr(&args);
    let b = klr(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}
