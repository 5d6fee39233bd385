//! Concrete module analyses: the weight-zero invariant matrix of the
//! highest-short-root module, its determinant, the E8 non-vanishing
//! certificate, the rank-one irreducibility criterion and its maximal-vector
//! oracle, and the G2 `ω₂` scalar.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::qarith::{
    cyclotomic, euler_phi, qbinom, qbinom_vanishes_fast, qint, s_value, vanishes_at, LaurentPoly,
    QArithError, SpecOrder,
};
use crate::rootsystem::{Kind, RootSystem, TypeCache};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylModError {
    #[error(transparent)]
    Arith(#[from] QArithError),
    #[error("E8 certificate failed at step `{step}`: {detail}")]
    Certificate { step: &'static str, detail: String },
}

/// The matrix `D` over the simple short roots: `[2]_q` on the diagonal, `1`
/// where two short simple roots are joined, `0` elsewhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortRootMatrix {
    /// Ambient 0-based node of each row/column.
    pub nodes: Vec<usize>,
    pub entries: Vec<Vec<LaurentPoly>>,
}

impl ShortRootMatrix {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn determinant(&self) -> LaurentPoly {
        determinant(&self.entries)
    }
}

pub fn short_root_matrix(rs: &RootSystem) -> ShortRootMatrix {
    short_root_matrix_with(rs, &qint(2))
}

/// `D` with `diagonal` in place of `[2]_q`.
pub fn short_root_matrix_with(rs: &RootSystem, diagonal: &LaurentPoly) -> ShortRootMatrix {
    let nodes = rs.short_simple_nodes();
    let entries = nodes
        .iter()
        .map(|&i| {
            nodes
                .iter()
                .map(|&j| {
                    if i == j {
                        diagonal.clone()
                    } else if rs.cartan()[j][i] == -1 {
                        LaurentPoly::one()
                    } else {
                        LaurentPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    ShortRootMatrix { nodes, entries }
}

/// Exact determinant by Laplace expansion along rows, memoized on the set of
/// columns already used. Sizes here are at most 12.
pub fn determinant(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    assert!(n <= 20, "determinant size {n} too large for subset expansion");
    // minor[mask] = determinant of the rows n-|mask|.. restricted to columns in mask
    let full = (1usize << n) - 1;
    let mut minor: Vec<Option<LaurentPoly>> = vec![None; 1 << n];
    minor[0] = Some(LaurentPoly::one());
    for mask in 1..=full {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = LaurentPoly::zero();
        let mut sign_pos = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = &m[row][col];
            if !entry.is_zero() {
                if let Some(sub) = &minor[mask & !(1 << col)] {
                    if !sub.is_zero() {
                        let term = entry * sub;
                        if sign_pos % 2 == 0 {
                            acc += &term;
                        } else {
                            acc -= &term;
                        }
                    }
                }
            }
            sign_pos += 1;
        }
        minor[mask] = Some(acc);
    }
    minor[full].take().expect("filled")
}

pub fn det_short_matrix(rs: &RootSystem) -> LaurentPoly {
    short_root_matrix(rs).determinant()
}

/// Closed forms of `det D` type by type. `D_n` uses
/// `det D_n = [2] det D_{n-1} - det D_{n-2}` from the `D₄` value, with
/// `D₃ = A₃`.
pub fn closed_form_det_d(rs: &RootSystem) -> LaurentPoly {
    let n = rs.rank() as i64;
    let two = qint(2);
    match rs.kind() {
        Kind::A => qint(n + 1),
        Kind::B | Kind::G => two,
        Kind::C => qint(n),
        Kind::F => qint(3),
        Kind::D => {
            let d4 = &(&two * &two) * &(&(&two * &two) - &LaurentPoly::constant(3));
            let (mut prev, mut cur) = (qint(4), d4);
            for _ in 5..=n {
                let next = &(&two * &cur) - &prev;
                prev = cur;
                cur = next;
            }
            cur
        }
        Kind::E => {
            let (a, b) = match n {
                6 => (qint(6), &qint(3) * &qint(3)),
                7 => (qint(7), &qint(3) * &qint(4)),
                _ => (qint(8), &qint(3) * &qint(5)),
            };
            &(&two * &a) - &b
        }
    }
}

/// `det D` vanishes at order `ell`: the highest-short-root module then has a
/// trivial submodule, hence is reducible.
pub fn adjoint_short_reducible_at(rs: &RootSystem, ell: u64) -> Result<bool, WeylModError> {
    let spec = SpecOrder::order(ell)?;
    Ok(vanishes_at(&det_short_cached(rs), spec))
}

/// `det_short_matrix`, memoized per type. Entries depend only on the type.
pub fn det_short_cached(rs: &RootSystem) -> Arc<LaurentPoly> {
    static CACHE: OnceLock<TypeCache<LaurentPoly>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (rs.kind(), rs.rank());
    if let Some(det) = cache.lock().expect("cache poisoned").get(&key) {
        return Arc::clone(det);
    }
    let det = Arc::new(det_short_matrix(rs));
    Arc::clone(cache.lock().expect("cache poisoned").entry(key).or_insert(det))
}

/// All orders `ell >= 1` with `vanishes_at(p, ell)`, up to `max_ell`.
pub fn vanishing_orders(p: &LaurentPoly, max_ell: u64) -> Vec<u64> {
    (1..=max_ell)
        .filter(|&l| vanishes_at(p, SpecOrder::order(l).expect("ell >= 1")))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub ell: u64,
    pub phi: u64,
    pub divides: bool,
}

/// Evidence that `det D` for E8 vanishes at no root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E8Certificate {
    pub det_d: LaurentPoly,
    /// `q^8 (q^2 - 1)^2 det D`.
    pub f: LaurentPoly,
    /// `((q - 1)^2, (q + 1)^2, f16)` with product `f`.
    pub factors: (LaurentPoly, LaurentPoly, LaurentPoly),
    /// Every `ell >= 3` with `φ(ell) <= deg f`, and whether `Φ_ell | f16`.
    pub checked_orders: Vec<OrderCheck>,
    pub value_at_minus_one: BigInt,
    pub value_at_one: BigInt,
}

pub fn e8_f_expected() -> LaurentPoly {
    LaurentPoly::from_terms([(20, 1), (18, -1), (16, -1), (12, 1), (8, 1), (4, -1), (2, -1), (0, 1)])
}

pub fn e8_f16_expected() -> LaurentPoly {
    LaurentPoly::from_terms([(16, 1), (14, 1), (10, -1), (8, -1), (6, -1), (2, 1), (0, 1)])
}

/// Compute the E8 certificate data. Fails only if the determinant, `f` or
/// its factorization disagree with the expected closed forms; whether some
/// cyclotomic polynomial divides `f16` is recorded, not checked.
pub fn build_e8_certificate() -> Result<E8Certificate, WeylModError> {
    let fail = |step: &'static str, detail: String| WeylModError::Certificate { step, detail };
    let rs = RootSystem::get(Kind::E, 8).map_err(|e| fail("build E8", e.to_string()))?;

    let det_d = det_short_matrix(&rs);
    let closed = &(&qint(2) * &qint(8)) - &(&qint(3) * &qint(5));
    if det_d != closed {
        return Err(fail("determinant", format!("det D = {det_d}, expected {closed}")));
    }

    let q2m1 = LaurentPoly::from_terms([(2, 1), (0, -1)]);
    let f = &(&det_d.shift(8) * &q2m1) * &q2m1;
    if f != e8_f_expected() {
        return Err(fail("f(q)", format!("f = {f}, expected {}", e8_f_expected())));
    }

    let qm1 = cyclotomic(1)?;
    let qp1 = cyclotomic(2)?;
    let sq_m = &qm1 * &qm1;
    let sq_p = &qp1 * &qp1;
    let f16 = f
        .div_exact(&(&sq_m * &sq_p))
        .ok_or_else(|| fail("factor", "(q-1)^2 (q+1)^2 does not divide f".into()))?;
    if f16 != e8_f16_expected() {
        return Err(fail("factor", format!("f16 = {f16}, expected {}", e8_f16_expected())));
    }
    if &(&sq_m * &sq_p) * &f16 != f {
        return Err(fail("factor", "product of factors differs from f".into()));
    }
    // det D = q^-8 f16, so det D vanishes exactly where f16 does
    if det_d.shift(8) != f16 {
        return Err(fail("factor", "q^8 det D differs from f16".into()));
    }

    let degree = f.max_exp().unwrap_or(0) as u64;
    let checked_orders = orders_with_phi_at_most(degree)
        .into_iter()
        .filter(|&ell| ell >= 3)
        .map(|ell| OrderCheck {
            ell,
            phi: euler_phi(ell),
            divides: vanishes_at(&f16, SpecOrder::order(ell).expect("ell >= 3")),
        })
        .collect();

    Ok(E8Certificate {
        value_at_minus_one: det_d.eval_at_unit(true),
        value_at_one: det_d.eval_at_unit(false),
        det_d,
        f,
        factors: (sq_m, sq_p, f16),
        checked_orders,
    })
}

impl E8Certificate {
    /// Orders `ell >= 3` in the enumeration at which `Φ_ell | f16`.
    pub fn dividing_orders(&self) -> Vec<u64> {
        self.checked_orders.iter().filter(|c| c.divides).map(|c| c.ell).collect()
    }

    /// The non-vanishing claims: no `Φ_ell` with `ell >= 3` divides `f16`,
    /// and `det D` is nonzero at `q = ±1`.
    pub fn check(&self) -> Result<(), WeylModError> {
        let fail = |step: &'static str, detail: String| WeylModError::Certificate { step, detail };
        if !self.checked_orders.iter().any(|c| c.ell == 17 && c.phi == 16) {
            return Err(fail("cyclotomic", "order 17 missing from the enumeration".into()));
        }
        let dividing = self.dividing_orders();
        if !dividing.is_empty() {
            let names: Vec<String> = dividing.iter().map(|l| format!("Φ_{l}")).collect();
            return Err(fail(
                "cyclotomic",
                format!("{} divides f16, so det D vanishes at those orders", names.join(", ")),
            ));
        }
        if self.value_at_minus_one.is_zero() || self.value_at_one.is_zero() {
            return Err(fail(
                "evaluation",
                format!("det D(-1) = {}, det D(1) = {}", self.value_at_minus_one, self.value_at_one),
            ));
        }
        Ok(())
    }
}

/// Build and check the E8 certificate. Any failed check names the step.
pub fn e8_certificate() -> Result<E8Certificate, WeylModError> {
    let cert = build_e8_certificate()?;
    cert.check()?;
    Ok(cert)
}

/// Every `n >= 1` with `φ(n) <= bound`, ascending. Uses `φ(n) >= sqrt(n / 2)`.
pub fn orders_with_phi_at_most(bound: u64) -> Vec<u64> {
    (1..=2 * bound.max(1) * bound.max(1))
        .filter(|&n| euler_phi(n) <= bound)
        .collect()
}

/// Smallest order at which `p` vanishes, if any. A nonzero `p` spanning
/// exponents `lo..=hi` can only be divisible by `Φ_ell` with
/// `φ(ell) <= hi - lo`, so the search is exhaustive.
pub fn first_vanishing_order(p: &LaurentPoly) -> Option<u64> {
    if p.is_zero() {
        return Some(1);
    }
    let span = (p.max_exp()? - p.min_exp()?) as u64;
    orders_with_phi_at_most(span)
        .into_iter()
        .find(|&ell| vanishes_at(p, SpecOrder::order(ell).expect("ell >= 1")))
}

/// Rank-one criterion: `Δ(λ)` is irreducible at order `ell` iff `λ < s_ℓ`
/// or `λ ≡ -1 (mod s_ℓ)`.
pub fn sl2_irreducible(lambda: u64, ell: u64) -> Result<bool, WeylModError> {
    if ell == 0 {
        return Err(QArithError::ZeroOrder(0).into());
    }
    let s = s_value(ell)?;
    Ok(lambda < s || lambda % s == s - 1)
}

/// Irreducibility read off the divided-power action `E^{(m)} v_j =
/// [j+m, m] v_{j+m}` on the basis `v_0..v_λ`: reducible iff some `v_j`
/// with `j < λ` is killed by every `E^{(m)}`, `1 <= m <= λ - j`.
pub fn sl2_maximal_vector_oracle(lambda: u64, ell: u64) -> Result<bool, WeylModError> {
    let spec = SpecOrder::order(ell)?;
    let lambda = lambda as i64;
    for j in 0..lambda {
        let mut moved = false;
        for m in 1..=lambda - j {
            if !qbinom_vanishes_fast(j + m, m, spec)? {
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same oracle with every Gaussian binomial expanded symbolically.
/// Only practical for small `λ`.
pub fn sl2_maximal_vector_oracle_symbolic(lambda: u64, ell: u64) -> Result<bool, WeylModError> {
    let spec = SpecOrder::order(ell)?;
    let lambda = lambda as i64;
    for j in 0..lambda {
        let mut moved = false;
        for m in 1..=lambda - j {
            if !vanishes_at(&qbinom(j + m, m)?, spec) {
                moved = true;
                break;
            }
        }
        if !moved {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[6]^2 - [3]`, the weight-zero invariant scalar of the 14-dimensional G2
/// module.
pub fn g2_omega2_scalar() -> LaurentPoly {
    let six = qint(6);
    &(&six * &six) - &qint(3)
}

pub fn g2_omega2_reducible_at(ell: u64) -> Result<bool, WeylModError> {
    Ok(vanishes_at(&g2_omega2_scalar(), SpecOrder::order(ell)?))
}
