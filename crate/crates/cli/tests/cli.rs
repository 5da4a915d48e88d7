use std::process::{Command, Output};

use serde_json::Value;
use toric_richardson::io::{off_vertices, polytope_from_json};

fn torich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torich"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classify_base_case_is_toric() {
    let o = torich(&["classify", "--v", "1,3,2,4", "--w", "4,2,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_toric"], true);
    assert_eq!(v["is_hypercube"], true);
    assert_eq!(v["d"], 4);
    assert_eq!(v["v"], serde_json::json!([1, 3, 2, 4]));
    assert!(v.get("by_lattice").is_none());
    let all = torich(&[
        "classify",
        "--v",
        "1,3,2,4",
        "--w",
        "4,2,3,1",
        "--all-tests",
        "--json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&all)).unwrap();
    for key in [
        "by_two_crown",
        "by_lattice",
        "by_interval_poset_lattice",
        "by_r_poly",
    ] {
        assert_eq!(v[key], true, "{key}");
    }
}

#[test]
fn classify_reports_witness_for_longest_element() {
    let o = torich(&["classify", "--v", "1,2,3", "--w", "3,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["is_toric"], false);
    assert_eq!(v["witness"]["kind"], "two_crown");
}

#[test]
fn enumerate_streams_one_verdict_per_line() {
    let o = torich(&["classify", "--sn", "3", "--enumerate"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 19);
    assert_eq!(lines.iter().filter(|v| v["is_toric"] == true).count(), 18);
}

#[test]
fn enumerate_s4_counts() {
    let o = torich(&["classify", "--enumerate", "--sn", "4", "--output", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("213 intervals, 176 toric\n"));
}

#[test]
fn crown_off_has_ten_vertices() {
    let o = torich(&[
        "polytope", "--v", "2,1,4,3", "--w", "4,2,3,1", "--output", "off",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("OFF\n10 8 16\n"));
    assert_eq!(off_vertices(&text).unwrap().len(), 10);
}

#[test]
fn polytope_json_round_trips() {
    let o = torich(&[
        "polytope", "--v", "2,1,4,3", "--w", "4,2,3,1", "--output", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let p = polytope_from_json(&stdout(&o)).unwrap();
    assert_eq!(p.num_vertices(), 10);
    assert_eq!(p.facets().len(), 8);
}

#[test]
fn explicit_word_is_accepted() {
    let o = torich(&[
        "polytope",
        "--v",
        "2,1,4,3",
        "--w",
        "4,2,3,1",
        "--word",
        "3,2,1,2,3",
        "--output",
        "text",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(stdout(&o).contains("vertices 10"));
}

#[test]
fn summands_json_lists_minors() {
    let o = torich(&["summands", "--v", "2,1,4,3", "--w", "4,2,3,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["summands"].as_array().unwrap().len(), 3);
    assert_eq!(v["bridges"].as_array().unwrap().len(), 3);
    assert!(v["minors"]
        .as_array()
        .unwrap()
        .iter()
        .all(|m| m["terms"].as_array().unwrap().len() == 1));
}

#[test]
fn dot_outputs() {
    let hasse = torich(&[
        "polytope", "--v", "2,1,4,3", "--w", "4,2,3,1", "--output", "dot",
    ]);
    assert!(stdout(&hasse).starts_with("digraph"));
    let wiring = torich(&[
        "summands", "--v", "2,1,4,3", "--w", "4,2,3,1", "--output", "dot",
    ]);
    assert!(stdout(&wiring).contains("color=red"));
    let plabic = torich(&["plabic", "hypercube", "--n", "2", "--k", "1"]);
    assert_eq!(plabic.status.code(), Some(0));
    assert!(stdout(&plabic).contains("neato"));
}

#[test]
fn family_verification_passes() {
    let even = torich(&["family", "even", "--n", "6", "--verify", "--seed", "1"]);
    assert_eq!(even.status.code(), Some(0));
    assert!(stdout(&even).ends_with("PASS\n"));
    let cube = torich(&[
        "family",
        "hypercube",
        "--n",
        "3",
        "--verify",
        "--output",
        "json",
    ]);
    assert_eq!(cube.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&cube)).unwrap();
    assert_eq!(v["interval_size"], 4096);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_s4_exits_zero() {
    let o = torich(&["verify-all", "--sn", "4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all checks pass"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["classify", "--v", "1,2,3", "--w", "1,2"],
        vec!["classify", "--v", "2,1", "--w", "1,2"],
        vec!["classify", "--v", "1,1", "--w", "1,2"],
        vec!["polytope", "--v", "1,2,3", "--w", "3,2,1"],
        vec![
            "polytope", "--v", "2,1,4,3", "--w", "4,2,3,1", "--word", "1,2,3",
        ],
        vec!["family", "even", "--n", "5"],
        vec!["classify", "--enumerate", "--sn", "9"],
        vec!["frobnicate"],
    ] {
        let o = torich(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["summands", "--v", "2,1,4,3", "--w", "4,2,3,1"];
    assert_eq!(torich(&args).stdout, torich(&args).stdout);
    let args = [
        "verify-all",
        "--sn",
        "5",
        "--seed",
        "11",
        "--output",
        "json",
    ];
    let (a, b) = (torich(&args), torich(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_can_be_redirected_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("crown.off");
    let o = torich(&[
        "polytope", "--v", "2,1,4,3", "--w", "4,2,3,1", "--output", "off",
    ]);
    std::fs::write(&path, &o.stdout).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(off_vertices(&text).unwrap().len(), 10);
}
