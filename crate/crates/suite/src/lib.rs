//! The acceptance checks, shared by the `acceptance` test target and the
//! `verify-paper` command. Each criterion reports one line per sub-item.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use qweyl::qarith::{cyclotomic, euler_phi, qbinom, qint, vanishes_at, LaurentPoly, SpecOrder};
use qweyl::rootsystem::{Kind, RootSystem, RootSystemError, Weight};
use qweyl::sweep::{classification_sweep, map_ordered, sl2_disagreements, vanishing_disagreements, Execution};
use qweyl::weylmods::{
    build_e8_certificate, closed_form_det_d, det_short_cached, e8_f16_expected, e8_f_expected,
    orders_with_phi_at_most, short_root_matrix_with, sl2_irreducible, sl2_maximal_vector_oracle,
};

pub const CRITERIA: [u8; 9] = [1, 2, 3, 4, 5, 6, 7, 8, 9];

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// Pass iff `failures` is empty; the detail lists at most a few of them.
    fn from_failures(name: impl Into<String>, checked: usize, failures: &[String]) -> Self {
        let detail = if failures.is_empty() {
            format!("{checked} checked")
        } else {
            let shown: Vec<&str> = failures.iter().take(8).map(String::as_str).collect();
            let more = failures.len().saturating_sub(shown.len());
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            format!("{} of {checked} failed: {}{tail}", failures.len(), shown.join("; "))
        };
        Self::new(name, failures.is_empty(), detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub items: Vec<CheckItem>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "[{}] criterion {}: {} ({:.2?})",
            mark(self.passed()),
            self.id,
            self.title,
            self.elapsed
        )?;
        for item in &self.items {
            writeln!(f, "    [{}] {}: {}", mark(item.passed), item.name, item.detail)?;
        }
        Ok(())
    }
}

fn timed(id: u8, title: &'static str, run: impl FnOnce() -> Vec<CheckItem>) -> CriterionReport {
    let start = Instant::now();
    let items = run();
    CriterionReport {
        id,
        title,
        items,
        elapsed: start.elapsed(),
    }
}

fn systems(max_rank: usize) -> Vec<std::sync::Arc<RootSystem>> {
    RootSystem::all_types(max_rank)
        .into_iter()
        .map(|(k, n)| RootSystem::get(k, n).expect("admissible type"))
        .collect()
}

/// One row of the determinant table: `det D` and where it vanishes.
#[derive(Debug, Clone, Serialize)]
pub struct DetRow {
    pub system: String,
    pub det: LaurentPoly,
    pub closed_form_matches: bool,
    pub vanishing_orders: Vec<u64>,
}

pub fn det_table(max_rank: usize, max_ell: u64, exec: Execution) -> Result<Vec<DetRow>, RootSystemError> {
    let all = systems(max_rank);
    Ok(map_ordered(exec, &all, |rs| {
        let det = (*det_short_cached(rs)).clone();
        DetRow {
            system: rs.name(),
            closed_form_matches: det == closed_form_det_d(rs),
            vanishing_orders: (1..=max_ell)
                .filter(|&l| vanishes_at(&det, SpecOrder::order(l).expect("ell >= 1")))
                .collect(),
            det,
        }
    }))
}

fn divisors_above_two(n: u64) -> Vec<u64> {
    (3..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Criterion 1 with `diagonal` standing in for `[2]_q` in the matrix `D`.
/// Perturbing it must break the type B item.
pub fn det_orders_with(diagonal: &LaurentPoly, exec: Execution) -> CriterionReport {
    timed(1, "highest-short-root determinant vanishes at the tabulated orders", || {
        let all = systems(12);
        let dets = map_ordered(exec, &all, |rs| short_root_matrix_with(rs, diagonal).determinant());
        let vanishes = |det: &LaurentPoly, ell: u64| vanishes_at(det, SpecOrder::order(ell).expect("ell >= 1"));
        let mut items = Vec::new();
        let mut group = |name: &str, kind: Kind, orders: &dyn Fn(usize) -> Vec<u64>| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for (rs, det) in all.iter().zip(&dets).filter(|(rs, _)| rs.kind() == kind) {
                for ell in orders(rs.rank()) {
                    checked += 1;
                    if !vanishes(det, ell) {
                        failures.push(format!("{} at ℓ={ell}", rs.name()));
                    }
                }
            }
            items.push(CheckItem::from_failures(name, checked, &failures));
        };
        group("A_n reducible at every ℓ > 2 dividing n+1", Kind::A, &|n| divisors_above_two(n as u64 + 1));
        group("B_n reducible at ℓ = 4", Kind::B, &|_| vec![4]);
        group("C_n reducible at every ℓ > 2 dividing n", Kind::C, &|n| divisors_above_two(n as u64));
        group("D_n reducible at ℓ = 4", Kind::D, &|_| vec![4]);
        group("E6 reducible at ℓ = 3", Kind::E, &|n| if n == 6 { vec![3] } else { vec![] });
        group("E7 reducible at ℓ = 4", Kind::E, &|n| if n == 7 { vec![4] } else { vec![] });
        group("F4 reducible at ℓ = 3", Kind::F, &|_| vec![3]);
        group("G2 reducible at ℓ = 4", Kind::G, &|_| vec![4]);

        let e8 = all
            .iter()
            .zip(&dets)
            .find(|(rs, _)| rs.kind() == Kind::E && rs.rank() == 8)
            .map(|(_, d)| d)
            .expect("E8 is in the list");
        let upto: Vec<String> = (1..=1000u64)
            .filter(|&l| vanishes(e8, l))
            .map(|l| format!("vanishes at ℓ={l}"))
            .collect();
        items.push(CheckItem::from_failures("E8 det D nonzero at every ℓ ≤ 1000", 1000, &upto));
        let small_phi: Vec<u64> = orders_with_phi_at_most(20).into_iter().filter(|&l| l >= 3).collect();
        let phi: Vec<String> = small_phi
            .iter()
            .filter(|&&l| vanishes(e8, l))
            .map(|l| format!("vanishes at ℓ={l} (φ={})", euler_phi(*l)))
            .collect();
        items.push(CheckItem::from_failures(
            "E8 det D nonzero at every ℓ ≥ 3 with φ(ℓ) ≤ 20",
            small_phi.len(),
            &phi,
        ));
        items
    })
}

pub fn det_orders(exec: Execution) -> CriterionReport {
    det_orders_with(&qint(2), exec)
}

pub fn det_closed_forms(exec: Execution) -> CriterionReport {
    timed(2, "symbolic determinant equals the closed form", || {
        let all = systems(12);
        let same = map_ordered(exec, &all, |rs| *det_short_cached(rs) == closed_form_det_d(rs));
        Kind::ALL
            .iter()
            .map(|&kind| {
                let (mut checked, mut failures) = (0, Vec::new());
                for (rs, ok) in all.iter().zip(&same).filter(|(rs, _)| rs.kind() == kind) {
                    checked += 1;
                    if !ok {
                        failures.push(rs.name());
                    }
                }
                CheckItem::from_failures(format!("type {kind}, rank ≤ 12"), checked, &failures)
            })
            .collect()
    })
}

pub fn e8_certificate_checks() -> CriterionReport {
    timed(3, "E8 determinant certificate", || {
        let cert = match build_e8_certificate() {
            Ok(c) => c,
            Err(e) => return vec![CheckItem::new("certificate construction", false, e.to_string())],
        };
        let f_ok = cert.f == e8_f_expected() && cert.f.num_terms() == 8;
        let (sq_m, sq_p, f16) = &cert.factors;
        let factor_ok = &(sq_m * sq_p) * f16 == cert.f && *f16 == e8_f16_expected() && f16.num_terms() == 7;
        let dividing = cert.dividing_orders();
        let listed: Vec<String> = dividing.iter().map(|l| format!("Φ_{l} divides f16")).collect();
        vec![
            CheckItem::new("f has the eight expected terms", f_ok, format!("f = {}", cert.f)),
            CheckItem::new(
                "f = (q-1)^2 (q+1)^2 f16 with the seven expected terms",
                factor_ok,
                format!("f16 = {f16}"),
            ),
            CheckItem::from_failures(
                "no Φ_ℓ with ℓ ≥ 3 and φ(ℓ) ≤ 20 divides f16",
                cert.checked_orders.len(),
                &listed,
            ),
            CheckItem::new(
                "det D(-1) = 1",
                cert.value_at_minus_one == BigInt::from(1),
                format!("det D(-1) = {}, det D(1) = {}", cert.value_at_minus_one, cert.value_at_one),
            ),
        ]
    })
}

pub fn sl2_equivalence(exec: Execution) -> CriterionReport {
    timed(4, "rank-one criterion equals the maximal-vector oracle", || {
        let item = match sl2_disagreements(300, 60, exec) {
            Ok((n, bad)) => {
                let failures: Vec<String> = bad.iter().map(|(l, e)| format!("λ={l}, ℓ={e}")).collect();
                CheckItem::from_failures("0 ≤ λ ≤ 300, 1 ≤ ℓ ≤ 60", n, &failures)
            }
            Err(e) => CheckItem::new("0 ≤ λ ≤ 300, 1 ≤ ℓ ≤ 60", false, e.to_string()),
        };
        vec![item]
    })
}

/// `s_1 s_2 ⋯ s_t - 1`.
pub fn unbounded_order_weight(t: u64) -> u64 {
    (1..=t).map(|j| if j % 2 == 0 { j / 2 } else { j }).product::<u64>() - 1
}

pub fn unbounded_order_instance() -> CriterionReport {
    timed(5, "rank-one weight irreducible at every order up to t", || {
        let both = |lambda: u64, ell: u64| -> Result<(bool, bool), String> {
            let c = sl2_irreducible(lambda, ell).map_err(|e| e.to_string())?;
            let o = sl2_maximal_vector_oracle(lambda, ell).map_err(|e| e.to_string())?;
            Ok((c, o))
        };
        let lambda = unbounded_order_weight(4);
        let mut items = vec![CheckItem::new("t = 4 gives λ = 5", lambda == 5, format!("λ = {lambda}"))];
        for ell in 1..=5 {
            let want = ell <= 4;
            let (ok, detail) = match both(lambda, ell) {
                Ok((c, o)) => (c == want && o == want, format!("criterion {c}, oracle {o}")),
                Err(e) => (false, e),
            };
            let verb = if want { "irreducible" } else { "reducible" };
            items.push(CheckItem::new(format!("λ = 5 {verb} at ℓ = {ell}"), ok, detail));
        }
        let mut failures = Vec::new();
        let mut checked = 0;
        for t in 5..=7 {
            let lambda = unbounded_order_weight(t);
            for ell in 1..=t {
                checked += 1;
                if both(lambda, ell) != Ok((true, true)) {
                    failures.push(format!("t={t}, λ={lambda}, ℓ={ell}"));
                }
            }
        }
        items.push(CheckItem::from_failures(
            "t = 5..7: s_1⋯s_t - 1 irreducible at every ℓ ≤ t",
            checked,
            &failures,
        ));
        items
    })
}

pub fn classification(exec: Execution) -> CriterionReport {
    timed(6, "global irreducibility classification, rank ≤ 8, coefficients ≤ 2", || {
        let cases = match classification_sweep(8, 2, exec) {
            Ok(c) => c,
            Err(e) => return vec![CheckItem::new("sweep", false, e.to_string())],
        };
        let label = |c: &qweyl::sweep::SweepCase| format!("{} {}", c.system, c.weight);
        let errors: Vec<String> = cases
            .iter()
            .filter_map(|c| c.error.as_ref().map(|e| format!("{}: {e}", label(c))))
            .collect();
        let mismatched: Vec<String> = cases
            .iter()
            .filter(|c| c.error.is_none() && (c.decision == "globally_irreducible") != c.expected_exception)
            .map(|c| match c.witness_ell {
                Some(ell) => format!("{} reducible at ℓ={ell}", label(c)),
                None => format!("{} globally irreducible", label(c)),
            })
            .collect();
        let reducible = cases.iter().filter(|c| c.verified.is_some()).count();
        let unverified: Vec<String> = cases
            .iter()
            .filter(|c| c.verified == Some(false))
            .map(label)
            .collect();
        vec![
            CheckItem::from_failures("no unreachable configuration", cases.len(), &errors),
            CheckItem::from_failures(
                "globally irreducible exactly on minuscule weights and (E8, ω8)",
                cases.len(),
                &mismatched,
            ),
            CheckItem::from_failures("every reducible trace replays", reducible, &unverified),
        ]
    })
}

pub fn end_node_arithmetic() -> CriterionReport {
    timed(7, "end-node affine reflection arithmetic", || {
        let (mut a_fail, mut b_fail) = (Vec::new(), Vec::new());
        for n in 2..=12usize {
            let a = RootSystem::get(Kind::A, n).expect("A_n");
            let ell = n as i64 + 1;
            let zero = Weight::zero(n);
            if a.dot_reflect_alpha0(ell, &zero) != *a.highest_short_root()
                || a.in_bottom_alcove_closure(ell, &zero) != Ok(true)
            {
                a_fail.push(format!("A{n}"));
            }
            let b = RootSystem::get(Kind::B, n).expect("B_n");
            let ell = 2 * n as i64 + 1;
            let wn = Weight::fundamental(n, n - 1);
            let target = &Weight::fundamental(n, 0) + &wn;
            if b.dot_reflect_alpha0(ell, &wn) != target || b.in_bottom_alcove_closure(ell, &wn) != Ok(true) {
                b_fail.push(format!("B{n}"));
            }
        }
        vec![
            CheckItem::from_failures("A_n: s_{α₀,n+1}·0 = α₀ with 0 in the alcove closure", 11, &a_fail),
            CheckItem::from_failures(
                "B_n: s_{α₀,2n+1}·ω_n = ω_1+ω_n with ω_n in the alcove closure",
                11,
                &b_fail,
            ),
        ]
    })
}

fn show<T: fmt::Display, E: fmt::Display>(r: &Result<T, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

pub fn dimension_checks(exec: Execution) -> CriterionReport {
    timed(8, "Weyl dimension cross-checks", || {
        let g2 = RootSystem::get(Kind::G, 2).expect("G2");
        let dim = g2.weyl_dimension(&Weight::fundamental(2, 1));
        let g2_item = CheckItem::new(
            "dim Δ(ω2) = 14 for G2",
            dim.as_ref().map(|d| *d == 14u32.into()).unwrap_or(false),
            show(&dim),
        );
        let all = systems(12);
        let rows = map_ordered(exec, &all, |rs| {
            let dim = rs.weyl_dimension(rs.highest_short_root());
            let expected = 2 * rs.short_positive_roots().count() + rs.short_simple_nodes().len();
            (rs.name(), dim, expected)
        });
        let failures: Vec<String> = rows
            .iter()
            .filter(|(_, dim, expected)| dim.as_ref().map(|d| *d != (*expected).into()).unwrap_or(true))
            .map(|(name, dim, expected)| format!("{name}: {} vs {expected}", show(dim)))
            .collect();
        let e8 = rows.iter().find(|(n, _, _)| n == "E8").map(|(_, d, e)| format!("E8: {} = {e}", show(d)));
        let mut adj = CheckItem::from_failures("dim Δ(α₀) = |Φ_s| + |Δ_s|, rank ≤ 12", rows.len(), &failures);
        if let (true, Some(e8)) = (adj.passed, e8) {
            adj.detail = format!("{}; {e8}", adj.detail);
        }
        vec![g2_item, adj]
    })
}

pub fn qarith_identities(exec: Execution) -> CriterionReport {
    timed(9, "quantum integer identity suite", || {
        let mut bar = Vec::new();
        for i in 1..=60 {
            if qint(i).bar() != qint(i) {
                bar.push(format!("[{i}]"));
            }
        }
        for n in 0..=40i64 {
            for m in 0..=n {
                match qbinom(n, m) {
                    Ok(b) if b.bar() == b => {}
                    _ => bar.push(format!("[{n},{m}]")),
                }
            }
        }
        let cheb: Vec<String> = (1..=50i64)
            .filter(|&n| &(&qint(2) * &qint(n)) - &qint(n - 1) != qint(n + 1))
            .map(|n| format!("n={n}"))
            .collect();
        let cyc: Vec<String> = (1..=200u64)
            .filter(|&n| {
                let product = (1..=n)
                    .filter(|d| n % d == 0)
                    .try_fold(LaurentPoly::one(), |acc, d| cyclotomic(d).map(|c| &acc * &c));
                product.ok() != Some(LaurentPoly::from_terms([(n as i64, 1), (0, -1)]))
            })
            .map(|n| format!("n={n}"))
            .collect();
        let (n, bad) = vanishing_disagreements(500, 100, exec);
        let fast: Vec<String> = bad.iter().map(|(i, e, d)| format!("i={i}, ℓ={e}, d={d}")).collect();
        vec![
            CheckItem::from_failures("bar-invariance of [i] (i ≤ 60) and [n,m] (n ≤ 40)", 60 + 41 * 42 / 2, &bar),
            CheckItem::from_failures("[2][n] - [n-1] = [n+1] for n ≤ 50", 50, &cheb),
            CheckItem::from_failures("product of Φ_d over d | n is q^n - 1 for n ≤ 200", 200, &cyc),
            CheckItem::from_failures("fast vanishing rule agrees for i ≤ 500, ℓ ≤ 100, d ≤ 3", n, &fast),
        ]
    })
}

pub fn run_criterion(id: u8, exec: Execution) -> Option<CriterionReport> {
    Some(match id {
        1 => det_orders(exec),
        2 => det_closed_forms(exec),
        3 => e8_certificate_checks(),
        4 => sl2_equivalence(exec),
        5 => unbounded_order_instance(),
        6 => classification(exec),
        7 => end_node_arithmetic(),
        8 => dimension_checks(exec),
        9 => qarith_identities(exec),
        _ => return None,
    })
}

pub fn run_all(exec: Execution) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .map(|&id| run_criterion(id, exec).expect("known id"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unbounded_weights() {
        assert_eq!(unbounded_order_weight(4), 5);
        assert_eq!(unbounded_order_weight(5), 29);
    }

    #[test]
    fn perturbed_diagonal_breaks_type_b() {
        let bent = &qint(2) + &LaurentPoly::one();
        let report = det_orders_with(&bent, Execution::Parallel);
        let b = report.items.iter().find(|i| i.name.starts_with("B_n")).unwrap();
        assert!(!b.passed);
        assert!(!report.passed());
    }

    #[test]
    fn det_table_rows() {
        let rows = det_table(4, 12, Execution::Sequential).unwrap();
        let a3 = rows.iter().find(|r| r.system == "A3").unwrap();
        assert_eq!(a3.det, qint(4));
        assert_eq!(a3.vanishing_orders, vec![4, 8]);
        assert!(rows.iter().all(|r| r.closed_form_matches));
    }

    #[test]
    fn report_rendering() {
        let r = end_node_arithmetic();
        let text = r.to_string();
        assert!(text.starts_with("[PASS] criterion 7"));
        assert_eq!(text.lines().count(), 3);
    }
}
