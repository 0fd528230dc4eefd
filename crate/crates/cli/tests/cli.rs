use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn twisted(args: &[&str]) -> Output {
    let args: Vec<String> =
        args.iter().map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() }).collect();
    Command::new(env!("CARGO_BIN_EXE_twisted")).args(&args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = twisted(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json report"))
}

#[test]
fn reduced_edge_homology() {
    let o = twisted(&["homology", "--space", "edge.json", "--twist", "twist_edge_2_3.json", "--reduced", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced_homology: 0: Z/2"), "{}", stdout(&o));
}

#[test]
fn circle_homology_report() {
    let (code, r) = json(&["homology", "--space", "triangle_boundary.json", "--twist", "twist_identity_abc.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["version"], 1);
    assert_eq!(r["command"], "homology");
    assert_eq!(r["results"]["homology"], serde_json::json!(["Z", "Z", "0"]));
    assert!(r.get("timing_ms").is_none());
}

#[test]
fn zero_twist_matches_chain_ranks() {
    let (_, r) = json(&["homology", "--space", "edge.json", "--twist", "twist_edge_zero.json", "--emit-matrices"]);
    assert_eq!(r["results"]["homology"], serde_json::json!(["Z^2", "Z^3", "Z^4"]));
    let boundaries = r["results"]["homology_matrices"]["boundaries"].as_array().unwrap();
    let entries = boundaries.iter().flat_map(|m| m.as_array().unwrap()).flat_map(|row| row.as_array().unwrap());
    assert!(entries.into_iter().all(|x| x == "0"));
}

#[test]
fn verification_failures_exit_one() {
    let o = twisted(&["verify", "--space", "edge.json", "--twist", "twist_edge_noncommuting.json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL δ commutes"));
    let o = twisted(&["verify", "--space", "not_closed.json", "--twist", "twist_edge_2_3.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn singular_twist_runs_delta_only() {
    let o = twisted(&["verify", "--space", "edge.json", "--twist", "twist_z4_singular.json", "--seed", "3", "--samples", "100"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Δ-only mode"));
}

#[test]
fn forced_non_commuting_words_give_a_delta_witness() {
    let (code, r) = json(&[
        "verify-identities", "--space", "edge.json", "--twist", "twist_s3_conjugations.json", "--seed", "1", "--samples", "20",
    ]);
    assert_eq!(code, 1);
    let witness = r["verdicts"][1]["witness"].as_str().unwrap();
    assert!(witness.starts_with("d_i d_j"), "{witness}");
}

#[test]
fn identity_suite_on_a_category_is_deterministic() {
    let args = ["verify-identities", "--space", "arrow.json", "--twist", "twist_z5_edge.json", "--seed", "11", "--samples", "200"];
    let (code, a) = json(&args);
    let (_, b) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["results"]["random_words"], 200);
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(twisted(&["verify-identities", "--space", "edge.json", "--twist", "twist_z5_edge.json"]).status.code(), Some(2));
    assert_eq!(twisted(&["homology", "--space", "edge.json"]).status.code(), Some(2));
    assert_eq!(twisted(&["homology", "--space", "missing.json", "--twist", "twist_edge_2_3.json"]).status.code(), Some(2));
    assert_eq!(twisted(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(twisted(&["homology", "--space", "edge.json", "--twist", "twist_z5_edge.json"]).status.code(), Some(2));
    assert_eq!(
        twisted(&["homology", "--space", "edge.json", "--twist", "twist_edge_2_3.json", "--cap", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn mayer_vietoris_on_the_square() {
    let (code, r) = json(&["mv-check", "--space", "square_arc_1.json", "--space", "square_arc_2.json", "--twist", "twist_square_identity.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["reduced_homology"][1], "Z");
    assert_eq!(r["results"]["path_counts"][0], serde_json::json!([4, 3, 3, 2]));
}

#[test]
fn cones() {
    let ok = twisted(&["cone-check", "--space", "triangle_boundary.json", "--twist", "twist_cone.json", "--apex", "o"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = twisted(&["cone-check", "--space", "triangle_boundary.json", "--twist", "twist_cone_singular.json", "--apex", "o"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn bundle_and_smash() {
    let o = twisted(&["bundle-check", "--space", "arrow.json", "--twist", "twist_z5_slice.json", "--cap", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let (code, r) = json(&["smash", "--space", "edge.json", "--twist", "twist_z2_slice.json", "--basepoint", "a"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["cells"], serde_json::json!([1, 3, 10, 29]));
}

#[test]
fn report_file_and_timing() {
    let out = std::env::temp_dir().join(format!("twisted-report-{}.json", std::process::id()));
    let o = twisted(&[
        "homology", "--space", "edge.json", "--twist", "twist_edge_2_3.json", "--timing", "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(r["version"], 1);
    assert!(r["timing_ms"].is_u64());
}
