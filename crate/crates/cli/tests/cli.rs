use std::process::{Command, Output};

use serde_json::Value;

fn qweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qweyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Value, Option<i32>) {
    let mut all = args.to_vec();
    all.push("--json");
    let out = qweyl(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: {e}\n{}", String::from_utf8_lossy(&out.stderr))
    });
    (v, out.status.code())
}

fn walk<'a>(node: &'a Value, out: &mut Vec<&'a Value>) {
    out.push(node);
    for child in node["inner"].as_array().into_iter().flatten() {
        walk(child, out);
    }
}

#[test]
fn minuscule_and_reducible_decisions() {
    let (v, code) = json(&["classify", "--type", "D", "--rank", "5", "--weight", "w4"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["decision"], "globally_irreducible");
    assert_eq!(v["reason"], "minuscule");

    let (v, code) = json(&["classify", "--type", "B4", "--weight", "0,1,0,0"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["decision"], "reducible");
    assert_eq!(v["witness_ell"], 4);
    assert_eq!(v["verified"], true);
}

#[test]
fn e8_adjoint_reports_the_failed_certificate() {
    let (v, code) = json(&["classify", "--type", "E8", "--weight", "w8"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["decision"], "reducible");
    assert_eq!(v["witness_ell"], 60);
    let notes = v["notes"].as_array().unwrap();
    assert!(notes[0].as_str().unwrap().contains("Φ_60"));

    let (v, code) = json(&["e8-certificate"]);
    assert_eq!(code, Some(1));
    assert_eq!(v["check"]["passed"], false);
    assert_eq!(v["dividing_orders"], serde_json::json!([60]));
}

#[test]
fn every_trace_node_is_cited_and_verified() {
    for args in [
        ["witness", "--type", "E6", "--node", "3"],
        ["witness", "--type", "F4", "--node", "1"],
        ["witness", "--type", "C8", "--node", "3"],
        ["witness", "--type", "G2", "--node", "2"],
    ] {
        let (v, code) = json(&args);
        assert_eq!(code, Some(0), "{args:?}");
        let mut nodes = Vec::new();
        for root in v["trace"].as_array().unwrap() {
            walk(root, &mut nodes);
        }
        assert!(!nodes.is_empty());
        for n in nodes {
            assert!(!n["citation"].as_str().unwrap().is_empty(), "{args:?}");
            assert_eq!(n["verified"], true, "{args:?}");
            assert_eq!(n["params"]["ell"], v["witness_ell"], "{args:?}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["classify", "--type", "E7", "--weight", "w1+w3+2w7", "--json"];
    let a = qweyl(&args);
    let b = qweyl(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn arithmetic_subcommands() {
    let (v, code) = json(&["det-short", "--type", "A", "--rank", "4", "--ell", "5"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["closed_form_matches"], true);
    assert_eq!(v["vanishing_orders"], serde_json::json!([5, 10]));

    let (v, _) = json(&["sl2", "--lambda", "2", "--ell", "4"]);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["oracle_irreducible"], false);
    let (v, _) = json(&["sl2", "--lambda", "1", "--ell", "4"]);
    assert_eq!(v["irreducible"], true);

    let (v, code) = json(&["qbinom", "--n", "4", "--m", "2", "--ell", "8"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["value"], "q^4 + q^2 + 2 + q^-2 + q^-4");
    assert_eq!(v["vanishes"], true);
    assert_eq!(v["vanishes_symbolic"], true);
}

#[test]
fn table_and_end_nodes() {
    let (v, code) = json(&["table-theorem5-1", "--max-rank", "8"]);
    assert_eq!(code, Some(0));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["closed_form_matches"] == true));
    let g2 = rows.iter().find(|r| r["system"] == "G2").unwrap();
    assert_eq!(g2["vanishing_orders"], serde_json::json!([4]));

    let (v, code) = json(&["endnodes", "--max-rank", "6"]);
    assert_eq!(code, Some(0));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| r["verified"] == true && r["ell"] == r["witness_ell"]));
    let b3 = rows.iter().find(|r| r["system"] == "B3").unwrap();
    assert_eq!(b3["ell"], 7);
}

#[test]
fn bad_input_exits_two_and_names_the_field() {
    for (args, field) in [
        (vec!["classify", "--type", "Q", "--rank", "3", "--weight", "0"], "--type"),
        (vec!["classify", "--type", "A", "--weight", "0"], "--rank"),
        (vec!["classify", "--type", "E8", "--rank", "7", "--weight", "0"], "--rank"),
        (vec!["classify", "--type", "A3", "--weight", "w7"], "--weight"),
        (vec!["classify", "--type", "A3", "--weight", "-1,0,0"], "--weight"),
        (vec!["witness", "--type", "A3", "--node", "4"], "--node"),
        (vec!["qbinom", "--n", "3", "--m", "-1"], "--m"),
        (vec!["sl2", "--lambda", "3", "--ell", "0"], "--ell"),
    ] {
        let out = qweyl(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(field), "{args:?}: {err}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_subset_reports_per_criterion() {
    let (v, code) = json(&["verify-paper", "--only", "2", "--only", "4", "--sequential"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);

    let (v, code) = json(&["verify-paper", "--only", "3"]);
    assert_eq!(code, Some(1));
    assert_eq!(v["failed"], serde_json::json!([3]));
}
