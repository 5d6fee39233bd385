use std::fmt::{Display, Write as _};
use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use qweyl::classifier::{
    classify_global, e8_certificate_cached, endnode_witness, find_witness, replay, Decision,
    TraceNode,
};
use qweyl::qarith::{
    qbinom as qbinom_poly, qbinom_vanishes_fast, qbinom_vanishing_order, s_value, vanishes_at,
    SpecOrder,
};
use qweyl::rootsystem::{parse_type, Kind, RootSystem, Weight};
use qweyl::sweep::Execution;
use qweyl::weylmods::{
    closed_form_det_d, short_root_matrix, sl2_irreducible, sl2_maximal_vector_oracle,
};
use qweyl_suite::{run_criterion, CRITERIA};

/// Largest `|n|` for which `qbinom` expands the polynomial.
const SYMBOLIC_LIMIT: i64 = 2000;
/// Largest `λ` for which `sl2` also runs the maximal-vector oracle.
const ORACLE_LIMIT: u64 = 2000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{field}: {message}")]
    Input { field: &'static str, message: String },
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input { .. } => 2,
            Self::Internal(_) => 1,
        }
    }
}

fn input(field: &'static str, e: impl Display) -> CliError {
    CliError::Input {
        field,
        message: e.to_string(),
    }
}

fn internal(e: impl Display) -> CliError {
    CliError::Internal(e.to_string())
}

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Some internal check did not hold; exit 1.
    pub failed: bool,
}

fn system(kind_text: &str, rank: Option<usize>) -> Result<Arc<RootSystem>, CliError> {
    let (kind, in_type) = parse_type(kind_text).map_err(|e| input("--type", e))?;
    let n = match (in_type, rank) {
        (Some(a), Some(b)) if a != b => {
            return Err(input("--rank", format!("{b} conflicts with type {kind_text}")));
        }
        (Some(a), _) => a,
        (None, Some(b)) => b,
        (None, None) => return Err(input("--rank", "missing; pass --rank or a type such as E8")),
    };
    let field = if in_type.is_some() { "--type" } else { "--rank" };
    RootSystem::get(kind, n).map_err(|e| input(field, e))
}

fn dominant_weight(rs: &RootSystem, text: &str) -> Result<Weight, CliError> {
    let lam = Weight::parse(text, rs.rank()).map_err(|e| input("--weight", e))?;
    if !lam.is_dominant() {
        return Err(input("--weight", format!("{lam} is not dominant")));
    }
    Ok(lam)
}

fn render_trace(node: &TraceNode, depth: usize, full: bool, out: &mut String) {
    let pad = "  ".repeat(depth + 1);
    let status = if node.verified { "verified" } else { "NOT VERIFIED" };
    let _ = writeln!(
        out,
        "{pad}{} on {} at {}, ℓ = {}: {status}",
        node.step, node.system, node.weight, node.params["ell"]
    );
    if full {
        for (k, v) in node.params.iter().filter(|(k, _)| **k != "ell") {
            let _ = writeln!(out, "{pad}    {k} = {v}");
        }
        let _ = writeln!(out, "{pad}    by: {}", node.citation);
    }
    for child in &node.inner {
        render_trace(child, depth + 1, full, out);
    }
}

fn is_e8_adjoint(rs: &RootSystem, lam: &Weight) -> bool {
    rs.kind() == Kind::E && rs.rank() == 8 && *lam == Weight::fundamental(8, 7)
}

fn decide(rs: &RootSystem, lam: &Weight, full: bool) -> Result<Report, CliError> {
    let decision = classify_global(rs, lam).map_err(internal)?;
    let mut notes = Vec::new();
    if is_e8_adjoint(rs, lam) {
        if let Err(e) = e8_certificate_cached().map_err(internal)?.check() {
            notes.push(format!("{e}; treated as reducible"));
        }
    }
    let input_json = json!({ "type": rs.name(), "weight": lam.to_string(), "coords": lam.coords() });
    let mut text = String::new();
    let report = match &decision {
        Decision::GloballyIrreducible(reason) => {
            let _ = writeln!(text, "{} {lam}: globally irreducible ({})", rs.name(), json!(reason).as_str().unwrap_or(""));
            Report {
                json: json!({
                    "input": input_json,
                    "decision": decision.label(),
                    "reason": reason,
                    "witness_ell": null,
                    "verified": null,
                    "trace": [],
                    "citations": [],
                    "notes": notes,
                }),
                text,
                failed: false,
            }
        }
        Decision::Reducible { witness_ell, trace } => {
            let node = replay(rs, lam, trace).map_err(internal)?;
            let status = if node.verified { "trace verified" } else { "TRACE NOT VERIFIED" };
            let _ = writeln!(text, "{} {lam}: reducible at ℓ = {witness_ell} ({status})", rs.name());
            for note in &notes {
                let _ = writeln!(text, "note: {note}");
            }
            render_trace(&node, 0, full, &mut text);
            Report {
                json: json!({
                    "input": input_json,
                    "decision": decision.label(),
                    "reason": null,
                    "witness_ell": witness_ell,
                    "verified": node.verified,
                    "trace": [node],
                    "citations": node.citations(),
                    "notes": notes,
                }),
                text,
                failed: !node.verified,
            }
        }
    };
    Ok(report)
}

pub fn classify(kind: &str, rank: Option<usize>, weight: &str) -> Result<Report, CliError> {
    let rs = system(kind, rank)?;
    let lam = dominant_weight(&rs, weight)?;
    decide(&rs, &lam, false)
}

pub fn witness(
    kind: &str,
    rank: Option<usize>,
    weight: Option<&str>,
    node: Option<usize>,
) -> Result<Report, CliError> {
    let rs = system(kind, rank)?;
    let lam = match (weight, node) {
        (Some(text), _) => dominant_weight(&rs, text)?,
        (None, Some(i)) if (1..=rs.rank()).contains(&i) => Weight::fundamental(rs.rank(), i - 1),
        (None, Some(i)) => return Err(input("--node", format!("{i} is not a node of {}", rs.name()))),
        (None, None) => return Err(input("--weight", "missing")),
    };
    decide(&rs, &lam, true)
}

pub fn det_short(kind: &str, rank: Option<usize>, ell: Option<u64>, max_ell: u64) -> Result<Report, CliError> {
    let rs = system(kind, rank)?;
    let d = short_root_matrix(&rs);
    let det = d.determinant();
    let closed = closed_form_det_d(&rs);
    let order = |l: u64| SpecOrder::order(l).map_err(|e| input("--ell", e));
    let mut orders = Vec::new();
    for l in 1..=max_ell {
        if vanishes_at(&det, order(l)?) {
            orders.push(l);
        }
    }
    let vanishes = ell.map(|l| order(l).map(|s| vanishes_at(&det, s))).transpose()?;
    let matrix: Vec<Vec<String>> = d
        .entries
        .iter()
        .map(|row| row.iter().map(|p| p.to_string()).collect())
        .collect();
    let mut text = format!("det D for {} = {det}\n", rs.name());
    let _ = writeln!(text, "short simple nodes: {:?}", d.nodes.iter().map(|i| i + 1).collect::<Vec<_>>());
    let _ = writeln!(text, "closed form: {closed}");
    let _ = writeln!(text, "vanishes at ℓ ≤ {max_ell}: {orders:?}");
    if let (Some(l), Some(v)) = (ell, vanishes) {
        let _ = writeln!(text, "vanishes: {v} at ℓ = {l}");
    }
    Ok(Report {
        json: json!({
            "input": { "type": rs.name(), "ell": ell, "max_ell": max_ell },
            "nodes": d.nodes.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "matrix": matrix,
            "det": det.to_string(),
            "closed_form": closed.to_string(),
            "closed_form_matches": det == closed,
            "vanishing_orders": orders,
            "vanishes": vanishes,
        }),
        text,
        failed: det != closed,
    })
}

pub fn sl2(lambda: u64, ell: u64) -> Result<Report, CliError> {
    let s = s_value(ell).map_err(|e| input("--ell", e))?;
    let irreducible = sl2_irreducible(lambda, ell).map_err(|e| input("--ell", e))?;
    let oracle = if lambda <= ORACLE_LIMIT {
        Some(sl2_maximal_vector_oracle(lambda, ell).map_err(internal)?)
    } else {
        None
    };
    let disagree = oracle.is_some_and(|o| o != irreducible);
    let mut text = format!("Δ({lambda}) at ℓ = {ell} (s = {s}): irreducible: {irreducible}\n");
    match oracle {
        Some(o) => {
            let _ = writeln!(text, "maximal-vector oracle: irreducible: {o}");
        }
        None => {
            let _ = writeln!(text, "maximal-vector oracle skipped above λ = {ORACLE_LIMIT}");
        }
    }
    Ok(Report {
        json: json!({
            "input": { "lambda": lambda, "ell": ell },
            "s": s,
            "irreducible": irreducible,
            "oracle_irreducible": oracle,
        }),
        text,
        failed: disagree,
    })
}

pub fn qbinom(n: i64, m: i64, ell: Option<u64>, twist: u32) -> Result<Report, CliError> {
    if m < 0 {
        return Err(input("--m", format!("must be nonnegative, got {m}")));
    }
    let value = if n.abs() <= SYMBOLIC_LIMIT && m <= SYMBOLIC_LIMIT {
        Some(qbinom_poly(n, m).map_err(internal)?)
    } else {
        None
    };
    let mut text = match &value {
        Some(v) => format!("[{n}, {m}] = {v}\n"),
        None => format!("[{n}, {m}]: not expanded above |n| = {SYMBOLIC_LIMIT}\n"),
    };
    let mut out = json!({
        "input": { "n": n, "m": m, "ell": ell, "twist": twist },
        "value": value.as_ref().map(|v| v.to_string()),
    });
    let mut failed = false;
    if let Some(l) = ell {
        let spec = SpecOrder::new(l, twist).map_err(|e| input("--ell", e))?;
        let fast = qbinom_vanishes_fast(n, m, spec).map_err(internal)?;
        let multiplicity = qbinom_vanishing_order(n, m, spec).map_err(internal)?;
        let symbolic = value.as_ref().map(|v| vanishes_at(v, spec));
        failed = symbolic.is_some_and(|s| s != fast);
        let _ = writeln!(text, "at ℓ = {l}, twist {twist}: vanishes: {fast}");
        if let Some(s) = symbolic {
            let _ = writeln!(text, "symbolic check: vanishes: {s}");
        }
        out["vanishes"] = json!(fast);
        out["vanishes_symbolic"] = json!(symbolic);
        out["cyclotomic_multiplicity"] = json!(multiplicity);
    }
    Ok(Report { json: out, text, failed })
}

pub fn det_table(max_rank: usize, max_ell: u64) -> Result<Report, CliError> {
    let rows = qweyl_suite::det_table(max_rank, max_ell, Execution::Parallel).map_err(internal)?;
    let mut text = format!("{:<6} {:<40} det D\n", "type", format!("vanishing orders ≤ {max_ell}"));
    for r in &rows {
        let orders = format!("{:?}", r.vanishing_orders);
        let _ = writeln!(text, "{:<6} {:<40} {}", r.system, orders, r.det);
    }
    let failed = rows.iter().any(|r| !r.closed_form_matches);
    Ok(Report {
        json: json!({ "max_rank": max_rank, "max_ell": max_ell, "rows": rows }),
        text,
        failed,
    })
}

pub fn endnodes(max_rank: usize) -> Result<Report, CliError> {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut failed = false;
    for (kind, n) in RootSystem::all_types(max_rank) {
        let rs = RootSystem::get(kind, n).map_err(internal)?;
        let Ok((lam, ell, case)) = endnode_witness(&rs) else {
            continue;
        };
        let step = find_witness(&rs, &lam)
            .map_err(internal)?
            .ok_or_else(|| internal(format!("{} {lam} has no witness", rs.name())))?;
        let node = replay(&rs, &lam, &step).map_err(internal)?;
        failed |= !node.verified || step.ell() != ell;
        let evidence = node.params.get("evidence").cloned().unwrap_or(Value::Null);
        let _ = writeln!(
            text,
            "{:<4} {:<8} ℓ = {:<3} case {case}: {}",
            rs.name(),
            lam.to_string(),
            ell,
            if node.verified { "verified" } else { "NOT VERIFIED" }
        );
        rows.push(json!({
            "system": rs.name(),
            "weight": lam.to_string(),
            "ell": ell,
            "case": case,
            "witness_ell": step.ell(),
            "verified": node.verified,
            "evidence": evidence,
            "trace": node,
        }));
    }
    Ok(Report {
        json: json!({ "max_rank": max_rank, "rows": rows }),
        text,
        failed,
    })
}

pub fn e8_certificate() -> Result<Report, CliError> {
    let cert = e8_certificate_cached().map_err(internal)?;
    let check = cert.check();
    let (sq_m, sq_p, f16) = &cert.factors;
    let mut text = String::new();
    let _ = writeln!(text, "det D   = {}", cert.det_d);
    let _ = writeln!(text, "f       = {}", cert.f);
    let _ = writeln!(text, "(q-1)^2 = {sq_m}");
    let _ = writeln!(text, "(q+1)^2 = {sq_p}");
    let _ = writeln!(text, "f16     = {f16}");
    let _ = writeln!(text, "det D(-1) = {}, det D(1) = {}", cert.value_at_minus_one, cert.value_at_one);
    let _ = writeln!(text, "orders ℓ ≥ 3 with φ(ℓ) ≤ 20: {}", cert.checked_orders.len());
    for c in cert.checked_orders.iter().filter(|c| c.divides) {
        let _ = writeln!(text, "  Φ_{} (φ = {}) divides f16", c.ell, c.phi);
    }
    match &check {
        Ok(()) => text.push_str("certificate: all checks pass\n"),
        Err(e) => {
            let _ = writeln!(text, "certificate: FAILED: {e}");
        }
    }
    let orders: Vec<Value> = cert
        .checked_orders
        .iter()
        .map(|c| json!({ "ell": c.ell, "phi": c.phi, "divides": c.divides }))
        .collect();
    Ok(Report {
        json: json!({
            "det_d": cert.det_d.to_string(),
            "f": cert.f.to_string(),
            "factors": [sq_m.to_string(), sq_p.to_string(), f16.to_string()],
            "checked_orders": orders,
            "dividing_orders": cert.dividing_orders(),
            "value_at_minus_one": cert.value_at_minus_one.to_string(),
            "value_at_one": cert.value_at_one.to_string(),
            "check": { "passed": check.is_ok(), "error": check.as_ref().err().map(|e| e.to_string()) },
        }),
        text,
        failed: check.is_err(),
    })
}

pub fn verify(only: &[u8], sequential: bool) -> Result<Report, CliError> {
    let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
    let ids: Vec<u8> = if only.is_empty() { CRITERIA.to_vec() } else { only.to_vec() };
    let table = det_table(12, 60)?;
    let mut text = table.text.clone();
    text.push('\n');
    let mut reports = Vec::new();
    for id in ids {
        let report = run_criterion(id, exec).ok_or_else(|| input("--only", format!("no criterion {id}")))?;
        text.push_str(&report.to_string());
        reports.push(report);
    }
    let failed_ids: Vec<u8> = reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
    if failed_ids.is_empty() {
        text.push_str("all criteria pass\n");
    } else {
        let _ = writeln!(text, "FAILED criteria: {failed_ids:?}");
    }
    Ok(Report {
        json: json!({
            "passed": failed_ids.is_empty(),
            "failed": failed_ids,
            "criteria": reports,
            "table": table.json["rows"],
        }),
        text,
        failed: !failed_ids.is_empty() || table.failed,
    })
}
