use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn glblab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_glblab")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn spec(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name);
    root.to_string_lossy().into_owned()
}

fn strip_timing(mut v: Value) -> Value {
    v["manifest"]["elapsed_ms"] = Value::Null;
    v
}

#[test]
fn haar_cylinder_at_two_one() {
    let out = glblab(&["cylinder", "--spec", &spec("haar.spec"), "--q", "2", "--rho", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "glblab/1");
    assert_eq!(v["result"]["value_num"], "1");
    assert_eq!(v["result"]["value_den"], "8");
}

#[test]
fn flag_q_overrides_spec_file() {
    let out = glblab(&["cylinder", "--spec", &spec("haar.spec"), "--q", "3", "--rho", "1,1"]);
    let v = json(&out);
    assert_eq!(v["manifest"]["params"]["q"], "3");
    assert_eq!(v["result"]["value_den"], "3");
}

#[test]
fn characteristic_cylinder_checks_both_routes() {
    let out = glblab(&["cylinder", "--spec", &spec("mixed.spec"), "--q", "2", "--rho", "2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["checks"]["two_route"], true);
}

#[test]
fn unipotent_character_values() {
    let out = glblab(&["character", "--kind", "unipotent", "--label", "1,1,1", "--class", "1,1,1", "--q", "2"]);
    assert_eq!(json(&out)["result"]["value"]["num"], "8");
    let out = glblab(&["character", "--kind", "induced", "--label", "1,1", "--class", "2", "--q", "2"]);
    assert_eq!(json(&out)["result"]["value"]["num"], "1");
}

// λ = (2,1) against the class (2) has mismatched degrees; it is an input
// error, not a value.
#[test]
fn mismatched_class_degree_is_an_input_error() {
    let out = glblab(&["character", "--kind", "unipotent", "--label", "2,1", "--class", "2", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size mismatch"));
}

#[test]
fn malformed_arguments_exit_two() {
    assert_eq!(glblab(&["cylinder", "--rho"]).status.code(), Some(2));
    assert_eq!(glblab(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(glblab(&["kostka-foulkes", "--shape", "x,y", "--content", "1"]).status.code(), Some(2));
}

#[test]
fn kostka_foulkes_entry_and_matrix() {
    let v = json(&glblab(&["kostka-foulkes", "--shape", "2,1", "--content", "1,1,1", "--t", "1/2"]));
    assert_eq!(v["result"]["value"]["num"], "3");
    assert_eq!(v["result"]["value"]["den"], "4");
    let v = json(&glblab(&["kostka-foulkes", "--n", "3", "--t", "1/2"]));
    assert_eq!(v["result"]["rows_shape_columns_content"][0][2], "1/8");
}

#[test]
fn coherence_check_passes_for_haar() {
    let out = glblab(&["coherence-check", "--spec", &spec("haar.spec"), "--nmax", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn wrong_convention_fails_two_route_verdict() {
    let args = ["cylinder", "--spec", &spec("mixed.spec"), "--q", "2", "--rho", "2,1", "--convention", "expand-beta"];
    let out = glblab(&args);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["checks"]["two_route"], false);
}

#[test]
fn flag_count_matches_character() {
    let v = json(&glblab(&["flag-count", "--type", "1,1,1", "--rho", "2,1", "--q", "2"]));
    assert_eq!(v["result"]["count"], v["result"]["character_value"]["num"]);
    assert_eq!(v["passed"], true);
    let v = json(&glblab(&["flag-count", "--type", "1,1", "--matrix", "10;01", "--q", "2"]));
    assert_eq!(v["result"]["count"], "3");
}

#[test]
fn grassmann_cells_total_gaussian_binomial() {
    let v = json(&glblab(&["grassmann", "--n", "4", "--k", "2", "--q", "2"]));
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["total_points"]["num"], "35");
    assert_eq!(v["result"]["cells"].as_array().unwrap().len(), 6);
}

#[test]
fn ipfamily_levels_embed() {
    for args in [
        vec!["ipfamily-check", "--example", "gl", "--m", "1", "--q", "2"],
        vec!["ipfamily-check", "--example", "affine", "--m", "1", "--q", "3"],
        vec!["ipfamily-check", "--example", "wreath", "--m", "2"],
    ] {
        let out = glblab(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn lln_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        strip_timing(json(&glblab(&["--threads", threads, "lln", "--n", "30", "--trials", "16", "--seed", "7"])))
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn lln_writes_trajectory_csv() {
    let dir = std::env::temp_dir().join(format!("glblab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("paths.csv");
    let out = glblab(&["lln", "--n", "10", "--trials", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("glblab-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    let out = glblab(&["--out", path.to_str().unwrap(), "kostka-foulkes", "--n", "2"]);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["manifest"]["command"], "kostka-foulkes");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn selftest_quick_passes() {
    let out = glblab(&["selftest", "--level", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
