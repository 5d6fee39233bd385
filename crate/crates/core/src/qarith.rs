//! Exact Laurent-polynomial arithmetic in one variable `q`, quantum integers,
//! Gaussian binomials, cyclotomic polynomials and zero tests at roots of unity.
//!
//! Everything here is exact: coefficients are arbitrary-precision integers and
//! a value `p(ζ)` for a primitive root of unity `ζ` of order `e` is decided
//! by testing whether the cyclotomic polynomial `Φ_e` divides `p`.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QArithError {
    #[error("order of the root of unity must be at least 1, got {0}")]
    ZeroOrder(u64),
    #[error("twist must be one of 1, 2, 3, got {0}")]
    BadTwist(u32),
    #[error("argument must be nonnegative, got {0}")]
    Negative(i64),
    #[error("s-value is undefined at 0")]
    SValueAtZero,
    #[error("exact division failed: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },
}

/// A Laurent polynomial in `q` with integer coefficients.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^exp`.
    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, c.into());
        p
    }

    /// The variable `q` raised to `exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// The bar involution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Substitute `q ↦ q^d`.
    pub fn twist(&self, d: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e * d as i64, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at `q = 1` (`negative == false`) or `q = -1`.
    pub fn eval_at_unit(&self, negative: bool) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
            if negative && e.rem_euclid(2) == 1 {
                acc - c
            } else {
                acc + c
            }
        })
    }

    /// Dense ascending coefficients of `q^{-min_exp} * self`, with the shift.
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, coeffs: Vec<BigInt>) -> Self {
        Self {
            terms: coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor` in `Z[q, q^{-1}]`, or `None` when the
    /// division does not come out even.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a_shift, a) = self.to_dense();
        let (b_shift, b) = divisor.to_dense();
        if a.len() < b.len() {
            return None;
        }
        let (quot, rem) = dense_div_rem(a, &b)?;
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(a_shift - b_shift, quot))
    }
}

/// Long division of ascending dense polynomials. `None` if some leading
/// coefficient does not divide evenly over the integers.
fn dense_div_rem(mut a: Vec<BigInt>, b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let db = b.len() - 1;
    let lead = &b[db];
    if a.len() <= db {
        return Some((Vec::new(), a));
    }
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &a[k + db];
        if top.is_zero() {
            continue;
        }
        let (qk, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                a[k + j] -= &qk * bj;
            }
        }
        quot[k] = qk;
    }
    a.truncate(db);
    Some((quot, a))
}

/// Reduce an ascending dense polynomial modulo a monic one, in place.
fn reduce_mod_monic(a: &mut Vec<BigInt>, monic: &[BigInt]) {
    let db = monic.len() - 1;
    while a.len() > db {
        let top = a.pop().expect("nonempty");
        if top.is_zero() {
            continue;
        }
        let base = a.len() - db;
        for (j, mj) in monic[..db].iter().enumerate() {
            if !mj.is_zero() {
                a[base + j] -= &top * mj;
            }
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("q")?,
                1 => write!(f, "{mag}q")?,
                _ if unit => write!(f, "q^{e}")?,
                _ => write!(f, "{mag}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

/// The order of a root of unity `ζ` together with the symmetrizer `d` of the
/// simple root it is attached to; the polynomial is evaluated at `ζ^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SpecOrder {
    ell: u64,
    twist: u32,
}

impl SpecOrder {
    pub fn new(ell: u64, twist: u32) -> Result<Self, QArithError> {
        if ell == 0 {
            return Err(QArithError::ZeroOrder(ell));
        }
        if !(1..=3).contains(&twist) {
            return Err(QArithError::BadTwist(twist));
        }
        Ok(Self { ell, twist })
    }

    /// Untwisted order `ell`.
    pub fn order(ell: u64) -> Result<Self, QArithError> {
        Self::new(ell, 1)
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    /// Order of `ζ^d`.
    pub fn effective_order(&self) -> u64 {
        self.ell / self.ell.gcd(&(self.twist as u64))
    }
}

/// The quantum integer `[i]_q = (q^i - q^{-i}) / (q - q^{-1})`.
pub fn qint(i: i64) -> LaurentPoly {
    let n = i.abs();
    let sign: i64 = if i < 0 { -1 } else { 1 };
    LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, sign)))
}

/// `[i]_q^! = [i]_q [i-1]_q ... [1]_q`, with `[0]^! = 1`.
pub fn qfactorial(i: i64) -> Result<LaurentPoly, QArithError> {
    if i < 0 {
        return Err(QArithError::Negative(i));
    }
    Ok((1..=i).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k)))
}

/// Gaussian binomial `[n m]_q` for any integer `n` and `m >= 0`.
pub fn qbinom(n: i64, m: i64) -> Result<LaurentPoly, QArithError> {
    if m < 0 {
        return Err(QArithError::Negative(m));
    }
    // [n, k] = [n, k-1] * [n-k+1] / [k]; every intermediate is itself a
    // Gaussian binomial so each division is exact.
    let mut acc = LaurentPoly::one();
    for k in 1..=m {
        let num = &acc * &qint(n - k + 1);
        if num.is_zero() {
            return Ok(num);
        }
        let den = qint(k);
        acc = num.div_exact(&den).ok_or_else(|| QArithError::InexactDivision {
            dividend: num.to_string(),
            divisor: den.to_string(),
        })?;
    }
    Ok(acc)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Möbius function.
fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Euler's totient.
pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Dense ascending coefficients of `Φ_n`, memoized.
fn cyclotomic_dense(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(c) = cyclotomic_cache().lock().expect("cache poisoned").get(&n) {
        return Arc::clone(c);
    }
    // Φ_n = ∏_{d | n} (q^d - 1)^{μ(n/d)}
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![BigInt::zero(); poly.len() + d];
            for (i, c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let mut divisor = vec![BigInt::zero(); d as usize + 1];
            divisor[0] = BigInt::from(-1);
            divisor[d as usize] = BigInt::one();
            let (quot, rem) = dense_div_rem(poly, &divisor).expect("monic divisor");
            debug_assert!(rem.iter().all(Zero::is_zero));
            poly = quot;
        }
    }
    let poly = Arc::new(poly);
    match cyclotomic_cache().lock().expect("cache poisoned").entry(n) {
        Entry::Occupied(o) => Arc::clone(o.get()),
        Entry::Vacant(v) => Arc::clone(v.insert(poly)),
    }
}

/// The `ell`-th cyclotomic polynomial `Φ_ell(q)`.
pub fn cyclotomic(ell: u64) -> Result<LaurentPoly, QArithError> {
    if ell == 0 {
        return Err(QArithError::ZeroOrder(0));
    }
    Ok(LaurentPoly::from_dense(0, cyclotomic_dense(ell).to_vec()))
}

/// Whether `p(ζ^d) = 0` for `ζ` a primitive `ell`-th root of unity.
///
/// With `e` the order of `ζ^d`, `p` vanishes iff `Φ_e` divides `p`. Since
/// `Φ_e | q^e - 1`, exponents are first folded modulo `e` (negative ones
/// included, `q` being a unit there) and the result reduced by `Φ_e`.
pub fn vanishes_at(p: &LaurentPoly, spec: SpecOrder) -> bool {
    if p.is_zero() {
        return true;
    }
    let e = spec.effective_order();
    match e {
        1 => p.eval_at_unit(false).is_zero(),
        2 => p.eval_at_unit(true).is_zero(),
        _ => {
            let mut folded = vec![BigInt::zero(); e as usize];
            for (exp, c) in p.terms() {
                folded[exp.rem_euclid(e as i64) as usize] += c;
            }
            reduce_mod_monic(&mut folded, &cyclotomic_dense(e));
            folded.iter().all(Zero::is_zero)
        }
    }
}

/// `s_j = j` for odd `j`, `j / 2` for even `j`.
pub fn s_value(j: u64) -> Result<u64, QArithError> {
    match j {
        0 => Err(QArithError::SValueAtZero),
        j if j % 2 == 1 => Ok(j),
        j => Ok(j / 2),
    }
}

/// Vanishing modulus for quantum integers at `spec`: `[i]` vanishes exactly
/// when this is `> 1` and divides `i` (or `i = 0`).
pub fn vanishing_modulus(spec: SpecOrder) -> u64 {
    s_value(spec.effective_order()).expect("effective order is positive")
}

/// Fast test for `[i]_{ζ^d} = 0`.
///
/// `[i]_q` is, up to a unit, the product of the `Φ_m` over `m | 2i` with
/// `m > 2`, each to the first power, so it vanishes at a primitive `e`-th
/// root exactly when `s_e > 1` and `s_e | i`. `[0]_q` is the zero polynomial.
pub fn qint_vanishes_fast(i: i64, spec: SpecOrder) -> bool {
    if i == 0 {
        return true;
    }
    let s = vanishing_modulus(spec);
    s > 1 && i.unsigned_abs().is_multiple_of(s)
}

/// Number of multiples of `s` in the closed interval `[lo, hi]`.
fn multiples_in(lo: i64, hi: i64, s: i64) -> i64 {
    if lo > hi {
        return 0;
    }
    Integer::div_floor(&hi, &s) - Integer::div_floor(&(lo - 1), &s)
}

/// Order of vanishing of `Φ_e` in `[n m]_q`, or `None` when the Gaussian
/// binomial is identically zero (`0 <= n < m`).
///
/// Each nonzero `[k]_q` carries `Φ_e` at most once, so the order is the
/// number of numerator factors divisible by `s_e` minus the number of
/// denominator factors divisible by `s_e`.
pub fn qbinom_vanishing_order(n: i64, m: i64, spec: SpecOrder) -> Result<Option<u64>, QArithError> {
    if m < 0 {
        return Err(QArithError::Negative(m));
    }
    if m == 0 {
        return Ok(Some(0));
    }
    if (0..m).contains(&n) {
        return Ok(None);
    }
    let s = vanishing_modulus(spec) as i64;
    if s == 1 {
        return Ok(Some(0));
    }
    let num = multiples_in(n - m + 1, n, s);
    let den = m / s;
    debug_assert!(num >= den);
    Ok(Some((num - den) as u64))
}

/// Fast test for `[n m]_{ζ^d} = 0` without expanding the polynomial.
pub fn qbinom_vanishes_fast(n: i64, m: i64, spec: SpecOrder) -> Result<bool, QArithError> {
    Ok(qbinom_vanishing_order(n, m, spec)?.is_none_or(|k| k > 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn ord(ell: u64) -> SpecOrder {
        SpecOrder::order(ell).unwrap()
    }

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), lp(&[(1, 1), (-1, 1)]));
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn qint_two_from_defining_fraction() {
        // (q^2 - q^-2) = [2] (q - q^-1)
        let lhs = lp(&[(2, 1), (-2, -1)]);
        let denom = lp(&[(1, 1), (-1, -1)]);
        assert_eq!(lhs.div_exact(&denom).unwrap(), qint(2));
    }

    #[test]
    fn qfactorial_values() {
        assert!(qfactorial(0).unwrap().is_one());
        assert!(qfactorial(1).unwrap().is_one());
        assert_eq!(qfactorial(3).unwrap(), &qint(2) * &qint(3));
        assert_eq!(qfactorial(-1), Err(QArithError::Negative(-1)));
    }

    #[test]
    fn qbinom_values() {
        assert!(qbinom(17, 0).unwrap().is_one());
        assert!(qbinom(-5, 0).unwrap().is_one());
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        assert_eq!(
            qbinom(4, 2).unwrap(),
            lp(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert!(qbinom(2, 3).unwrap().is_zero());
        assert_eq!(qbinom(3, -1), Err(QArithError::Negative(-1)));
    }

    #[test]
    fn qbinom_negative_top() {
        // [-1 m] = (-1)^m
        for m in 0..6 {
            let expected = LaurentPoly::constant(if m % 2 == 0 { 1 } else { -1 });
            assert_eq!(qbinom(-1, m).unwrap(), expected);
        }
    }

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic(1).unwrap(), lp(&[(1, 1), (0, -1)]));
        assert_eq!(cyclotomic(2).unwrap(), lp(&[(1, 1), (0, 1)]));
        assert_eq!(cyclotomic(4).unwrap(), lp(&[(2, 1), (0, 1)]));
        assert_eq!(cyclotomic(6).unwrap(), lp(&[(2, 1), (1, -1), (0, 1)]));
        assert_eq!(cyclotomic(0), Err(QArithError::ZeroOrder(0)));
    }

    #[test]
    fn cyclotomic_105_has_a_minus_two() {
        // smallest n whose cyclotomic polynomial has a coefficient outside {-1,0,1}
        let p = cyclotomic(105).unwrap();
        assert_eq!(p.max_exp(), Some(48));
        assert_eq!(p.coeff(7), BigInt::from(-2));
        assert_eq!(p.coeff(41), BigInt::from(-2));
    }

    #[test]
    fn vanishing_examples() {
        assert!(vanishes_at(&qint(2), ord(4)));
        assert!(vanishes_at(&qint(6), ord(3)));
        assert!(!vanishes_at(&qint(7), ord(2)));
        assert!(!vanishes_at(&qint(7), ord(1)));
        assert!(vanishes_at(&LaurentPoly::zero(), ord(1)));
    }

    #[test]
    fn values_at_minus_one() {
        // [i]_{-1} = (-1)^{i-1} i
        for i in 1..20i64 {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            assert_eq!(qint(i).eval_at_unit(true), BigInt::from(sign * i));
        }
    }

    #[test]
    fn twist_changes_effective_order() {
        let s = SpecOrder::new(4, 2).unwrap();
        assert_eq!(s.effective_order(), 2);
        assert!(!qint_vanishes_fast(3, s));
        assert!(!vanishes_at(&qint(3), s));
        let s = SpecOrder::new(6, 3).unwrap();
        assert_eq!(s.effective_order(), 2);
        assert_eq!(SpecOrder::new(9, 3).unwrap().effective_order(), 3);
        assert_eq!(SpecOrder::new(0, 1), Err(QArithError::ZeroOrder(0)));
        assert_eq!(SpecOrder::new(5, 4), Err(QArithError::BadTwist(4)));
    }

    #[test]
    fn s_values() {
        assert_eq!(s_value(5), Ok(5));
        assert_eq!(s_value(8), Ok(4));
        assert_eq!(s_value(1), Ok(1));
        assert_eq!(s_value(0), Err(QArithError::SValueAtZero));
    }

    #[test]
    fn fast_path_examples() {
        assert!(qint_vanishes_fast(2, ord(4)));
        for i in 1..50 {
            assert!(!qint_vanishes_fast(i, ord(1)));
            assert!(!qint_vanishes_fast(i, ord(2)));
        }
        assert!(qint_vanishes_fast(0, ord(1)));
    }

    #[test]
    fn qbinom_fast_path_matches_symbolic() {
        for ell in 1..=30 {
            for d in 1..=3 {
                let spec = SpecOrder::new(ell, d).unwrap();
                for n in -12..=24i64 {
                    for m in 0..=12 {
                        let sym = vanishes_at(&qbinom(n, m).unwrap(), spec);
                        assert_eq!(
                            qbinom_vanishes_fast(n, m, spec).unwrap(),
                            sym,
                            "n={n} m={m} ell={ell} d={d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn display_is_descending() {
        assert_eq!(qbinom(4, 2).unwrap().to_string(), "q^4 + q^2 + 2 + q^-2 + q^-4");
        assert_eq!(lp(&[(1, -1), (0, 3), (-1, -2)]).to_string(), "-q + 3 - 2q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(cyclotomic(1).unwrap().to_string(), "q - 1");
    }

    #[test]
    fn div_exact_rejects_remainders() {
        assert!(qint(3).div_exact(&qint(2)).is_none());
        assert!(qint(4).div_exact(&LaurentPoly::zero()).is_none());
        assert_eq!(qint(4).div_exact(&qint(2)).unwrap(), lp(&[(2, 1), (-2, 1)]));
    }

    #[test]
    fn totient_small() {
        let phis: Vec<u64> = (1..=12).map(euler_phi).collect();
        assert_eq!(phis, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
