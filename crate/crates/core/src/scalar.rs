//! Exact cyclotomic amplitudes.
//!
//! Every exact amplitude in this crate is a value of the form
//!
//! ```text
//! d^(-t/2) * (c_0 q^0 + c_1 q^1 + ... + c_{n-1} q^{n-1}),   q = exp(2*pi*i/n)
//! ```
//!
//! with rational coefficients `c_k` and an explicit integer power `t` of
//! `1/sqrt(d)`. The dimension `d` itself is carried by the surrounding
//! context (a matrix or basis vector knows its dimension); the scalar only
//! records the exponent `t`.
//!
//! Zero testing is exact: a numeric screen rejects clearly nonzero values
//! quickly, and the remaining candidates are reduced modulo the vanishing
//! sums of each prime-order subcycle of the `n`-th roots (for each prime
//! `p | n`, `q^j + q^(j+n/p) + ... + q^(j+(p-1)n/p) = 0`). Those relations
//! span the full kernel of evaluation over the rationals, so the reduction
//! decides zero with no tolerance.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_u64, lcm_u64, prime_factors};
use crate::error::{Error, Result};

/// Double-precision complex value used by the approximate mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxScalar {
    pub re: f64,
    pub im: f64,
}

impl ApproxScalar {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn norm_squared(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl std::ops::Add for ApproxScalar {
    type Output = ApproxScalar;
    fn add(self, o: ApproxScalar) -> ApproxScalar {
        ApproxScalar::new(self.re + o.re, self.im + o.im)
    }
}

impl std::ops::Sub for ApproxScalar {
    type Output = ApproxScalar;
    fn sub(self, o: ApproxScalar) -> ApproxScalar {
        ApproxScalar::new(self.re - o.re, self.im - o.im)
    }
}

impl std::ops::Mul for ApproxScalar {
    type Output = ApproxScalar;
    fn mul(self, o: ApproxScalar) -> ApproxScalar {
        ApproxScalar::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Serialize for ApproxScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.re, self.im).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ApproxScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(f64, f64)>::deserialize(d)?;
        Ok(ApproxScalar::new(re, im))
    }
}

/// Exact element of a cyclotomic extension of the rationals with an
/// explicit `1/sqrt(d)` normalization exponent.
#[derive(Debug, Clone)]
pub struct CycloScalar {
    order: u64,
    coeffs: BTreeMap<u64, BigRational>,
    sqrt_d_power: i64,
}

/// Row-reduced basis of the vanishing-sum relations for one root order.
///
/// Rows are indexed by their pivot exponent (the highest exponent in the
/// row); each row has a 1 at the pivot and zeros at every other pivot, so a
/// single elimination pass per pivot produces a canonical normal form.
struct ReductionTable {
    order: usize,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl ReductionTable {
    fn build(order: u64) -> Self {
        let n = order as usize;
        let mut generators: Vec<Vec<BigRational>> = Vec::new();
        for p in prime_factors(order) {
            let step = n / p as usize;
            for j in 0..step {
                let mut v = vec![BigRational::zero(); n];
                for i in 0..p as usize {
                    v[j + i * step] = BigRational::one();
                }
                generators.push(v);
            }
        }

        // Forward elimination with the pivot at the highest nonzero index.
        let mut rows: BTreeMap<usize, Vec<BigRational>> = BTreeMap::new();
        for mut v in generators {
            while let Some(pivot) = v.iter().rposition(|c| !c.is_zero()) {
                if let Some(row) = rows.get(&pivot) {
                    let f = v[pivot].clone();
                    for (vi, ri) in v.iter_mut().zip(row.iter()) {
                        *vi -= &f * ri;
                    }
                } else {
                    let f = v[pivot].clone();
                    for vi in v.iter_mut() {
                        *vi /= &f;
                    }
                    rows.insert(pivot, v);
                    break;
                }
            }
        }

        // Gauss-Jordan: clear every pivot column from the other rows so
        // reduction is a single pass and the normal form is canonical.
        let pivots: Vec<usize> = rows.keys().copied().collect();
        for &p in &pivots {
            let row_p = rows.get(&p).unwrap().clone();
            for &q in &pivots {
                if q == p {
                    continue;
                }
                let row_q = rows.get_mut(&q).unwrap();
                if !row_q[p].is_zero() {
                    let f = row_q[p].clone();
                    for (qi, pi) in row_q.iter_mut().zip(row_p.iter()) {
                        *qi -= &f * pi;
                    }
                }
            }
        }

        let rows = rows.into_iter().rev().collect();
        ReductionTable { order: n, rows }
    }

    fn reduce(&self, v: &mut [BigRational]) {
        debug_assert_eq!(v.len(), self.order);
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (vi, ri) in v.iter_mut().zip(row.iter()) {
                    *vi -= &f * ri;
                }
            }
        }
    }
}

static TABLES: Lazy<RwLock<HashMap<u64, Arc<ReductionTable>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

fn reduction_table(order: u64) -> Arc<ReductionTable> {
    if let Some(t) = TABLES.read().unwrap().get(&order) {
        return Arc::clone(t);
    }
    let table = Arc::new(ReductionTable::build(order));
    TABLES
        .write()
        .unwrap()
        .entry(order)
        .or_insert_with(|| Arc::clone(&table))
        .clone()
}

#[cfg(test)]
pub(crate) fn relation_rank(order: u64) -> usize {
    reduction_table(order).rows.len()
}

impl CycloScalar {
    /// The zero value.
    pub fn zero() -> Self {
        Self {
            order: 1,
            coeffs: BTreeMap::new(),
            sqrt_d_power: 0,
        }
    }

    /// The unit value.
    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        Self {
            order: 1,
            coeffs,
            sqrt_d_power: 0,
        }
        .canonical()
    }

    /// `exp(2*pi*i*k/n)` as an exact symbol; the exponent is reduced mod `n`.
    pub fn root_of_unity(order: u64, k: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let k = k.rem_euclid(order as i64) as u64;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, BigRational::one());
        Ok(Self {
            order,
            coeffs,
            sqrt_d_power: 0,
        }
        .canonical())
    }

    /// The imaginary unit `i`.
    pub fn imaginary_unit() -> Self {
        Self::root_of_unity(4, 1).unwrap()
    }

    /// `exp(2*pi*i*f)` for a rational fraction `f` of the full circle,
    /// expressed over the roots of order `n`.
    ///
    /// Panics when `f*n` is not an integer: callers pick `n` so that every
    /// phase of their construction is exact, and a miss is a bug in that
    /// order selection.
    pub fn circle_fraction(order: u64, f: &BigRational) -> Self {
        let scaled = f * BigRational::from_integer(BigInt::from(order));
        assert!(
            scaled.denom().is_one(),
            "phase {f} is not exact over the order-{order} roots"
        );
        let k = (scaled.numer() % BigInt::from(order))
            .to_i64()
            .expect("reduced exponent fits in i64");
        Self::root_of_unity(order, k).expect("order >= 1")
    }

    /// `1/sqrt(2)` expanded over the 8th roots: `(q8 + q8^7)/2`.
    pub fn inv_sqrt_two() -> Self {
        let q = Self::root_of_unity(8, 1).unwrap();
        let qc = Self::root_of_unity(8, 7).unwrap();
        q.add(&qc).scale(&BigRational::new(1.into(), 2.into()))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn sqrt_d_power(&self) -> i64 {
        self.sqrt_d_power
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Returns the same value re-tagged with normalization exponent `t`.
    /// The represented value changes by `d^((old-t)/2)`; use for attaching
    /// the `1/sqrt(d)` carried by basis-vector formulas.
    pub fn with_sqrt_d_power(mut self, t: i64) -> Self {
        self.sqrt_d_power = t;
        self.canonical()
    }

    fn canonical(mut self) -> Self {
        // exponents mod n, zero coefficients dropped
        if self.coeffs.keys().any(|&k| k >= self.order) || self.coeffs.values().any(|c| c.is_zero())
        {
            let mut reduced: BTreeMap<u64, BigRational> = BTreeMap::new();
            for (k, c) in std::mem::take(&mut self.coeffs) {
                if c.is_zero() {
                    continue;
                }
                let k = k % self.order;
                let slot = reduced.entry(k).or_insert_with(BigRational::zero);
                *slot += c;
                if slot.is_zero() {
                    reduced.remove(&k);
                }
            }
            self.coeffs = reduced;
        }
        if self.coeffs.is_empty() {
            self.order = 1;
            self.sqrt_d_power = 0;
            return self;
        }
        // shrink the order when every exponent shares a factor with it
        let g = self
            .coeffs
            .keys()
            .fold(self.order, |acc, &k| gcd_u64(acc, k));
        if g > 1 {
            self.order /= g;
            self.coeffs = std::mem::take(&mut self.coeffs)
                .into_iter()
                .map(|(k, c)| (k / g, c))
                .collect();
        }
        self
    }

    fn embedded(&self, order: u64) -> Self {
        debug_assert_eq!(order % self.order, 0);
        let f = order / self.order;
        Self {
            order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k * f, c.clone()))
                .collect(),
            sqrt_d_power: self.sqrt_d_power,
        }
    }

    /// Exact sum. The two operands must carry the same `sqrt_d_power`
    /// unless one of them is zero; mixing normalizations without knowing
    /// the dimension is a caller bug.
    pub fn add(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        assert_eq!(
            self.sqrt_d_power, other.sqrt_d_power,
            "cannot add amplitudes with different sqrt_d normalization (fold them first)"
        );
        let order = lcm_u64(self.order, other.order);
        let a = self.embedded(order);
        let b = other.embedded(order);
        let mut coeffs = a.coeffs;
        for (k, c) in b.coeffs {
            let slot = coeffs.entry(k).or_insert_with(BigRational::zero);
            *slot += c;
        }
        Self {
            order,
            coeffs,
            sqrt_d_power: self.sqrt_d_power,
        }
        .canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
            sqrt_d_power: self.sqrt_d_power,
        }
    }

    /// Exact product; `sqrt_d_power` adds.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let order = lcm_u64(self.order, other.order);
        let a = self.embedded(order);
        let b = other.embedded(order);
        let mut coeffs: BTreeMap<u64, BigRational> = BTreeMap::new();
        for (ka, ca) in &a.coeffs {
            for (kb, cb) in &b.coeffs {
                let k = (ka + kb) % order;
                let slot = coeffs.entry(k).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        Self {
            order,
            coeffs,
            sqrt_d_power: self.sqrt_d_power + other.sqrt_d_power,
        }
        .canonical()
    }

    /// Complex conjugate: `q^k -> q^(n-k)`.
    pub fn conj(&self) -> Self {
        Self {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| ((self.order - k) % self.order, c.clone()))
                .collect(),
            sqrt_d_power: self.sqrt_d_power,
        }
        .canonical()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Self {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * r)).collect(),
            sqrt_d_power: self.sqrt_d_power,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x * conj(x)`; the result equals its own conjugate.
    pub fn abs_squared(&self) -> Self {
        self.mul(&self.conj())
    }

    fn eval_sum(&self) -> ApproxScalar {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in &self.coeffs {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let theta = 2.0 * std::f64::consts::PI * (*k as f64) / n;
            re += c * theta.cos();
            im += c * theta.sin();
        }
        ApproxScalar::new(re, im)
    }

    /// Numeric value given the context dimension `d`.
    pub fn to_approx(&self, d: u64) -> ApproxScalar {
        let v = self.eval_sum();
        let scale = (d as f64).sqrt().powi(-(self.sqrt_d_power as i32));
        ApproxScalar::new(v.re * scale, v.im * scale)
    }

    /// Exact zero test (independent of `sqrt_d_power`, which scales by a
    /// nonzero factor).
    pub fn is_zero(&self) -> bool {
        if self.coeffs.is_empty() {
            return true;
        }
        // fast path: numerically large values cannot be zero
        let mag = self.eval_sum().norm();
        let budget: f64 = self
            .coeffs
            .values()
            .map(|c| c.to_f64().map(f64::abs).unwrap_or(f64::INFINITY))
            .sum();
        if mag.is_finite() && mag > 1e-9 * budget.max(1.0) {
            return false;
        }
        let table = reduction_table(self.order);
        let mut v = vec![BigRational::zero(); self.order as usize];
        for (k, c) in &self.coeffs {
            v[*k as usize] = c.clone();
        }
        table.reduce(&mut v);
        v.iter().all(|c| c.is_zero())
    }

    /// Canonical representative: coefficients reduced modulo the
    /// vanishing-sum relations, then re-canonicalized.
    pub fn normal_form(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let table = reduction_table(self.order);
        let mut v = vec![BigRational::zero(); self.order as usize];
        for (k, c) in &self.coeffs {
            v[*k as usize] = c.clone();
        }
        table.reduce(&mut v);
        let coeffs = v
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, c))
            .collect();
        Self {
            order: self.order,
            coeffs,
            sqrt_d_power: self.sqrt_d_power,
        }
        .canonical()
    }

    /// Absorbs even powers of `1/sqrt(d)` into the rational coefficients,
    /// leaving `sqrt_d_power` in `{0, 1}`. When `d` is a perfect square the
    /// residual square root is rational too and the result has exponent 0.
    pub fn fold_sqrt_d(&self, d: u64) -> Self {
        assert!(d >= 1, "context dimension must be positive");
        if self.coeffs.is_empty() {
            return Self::zero();
        }
        let u = self.sqrt_d_power.div_euclid(2);
        let eps = self.sqrt_d_power.rem_euclid(2);
        let mut out = if u == 0 {
            self.clone()
        } else {
            let d_big = BigInt::from(d);
            let factor = if u > 0 {
                BigRational::new(BigInt::one(), d_big.pow(u as u32))
            } else {
                BigRational::from_integer(d_big.pow((-u) as u32))
            };
            self.scale(&factor)
        };
        out.sqrt_d_power = eps;
        if eps == 1 {
            let root = (d as f64).sqrt().round() as u64;
            if root * root == d {
                out = out.scale(&BigRational::new(BigInt::one(), BigInt::from(root)));
                out.sqrt_d_power = 0;
            }
        }
        out.canonical()
    }

    /// Exact value equality in the context of dimension `d`.
    pub fn eq_in_dim(&self, other: &Self, d: u64) -> bool {
        let a = self.fold_sqrt_d(d);
        let b = other.fold_sqrt_d(d);
        if a.sqrt_d_power == b.sqrt_d_power {
            return a.sub(&b).is_zero();
        }
        match (a.is_zero(), b.is_zero()) {
            (true, true) => true,
            (false, false) => {
                // values on opposite sides of a residual sqrt(d); equal iff
                // the squares agree and the numeric signs match
                let aa = a.mul(&a).fold_sqrt_d(d);
                let bb = b.mul(&b).fold_sqrt_d(d);
                if !aa.sub(&bb).is_zero() {
                    return false;
                }
                let av = a.to_approx(d);
                let bv = b.to_approx(d);
                (av - bv).norm() < (av + bv).norm()
            }
            _ => false,
        }
    }

    /// The rational value, when the scalar is a rational constant with no
    /// residual `sqrt(d)` normalization.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.sqrt_d_power != 0 {
            return None;
        }
        let nf = self.normal_form();
        if nf.order == 1 && nf.coeffs.len() == 1 {
            nf.coeffs.get(&0).cloned()
        } else {
            None
        }
    }

    /// Multiplicative inverse, when it can be produced exactly:
    /// `1/x = conj(x)/|x|^2` whenever `|x|^2` reduces to a rational.
    pub fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mag2 = self.abs_squared().normal_form();
        if mag2.order != 1 || mag2.coeffs.len() != 1 {
            return None;
        }
        let r = mag2.coeffs.get(&0)?.clone();
        let mut inv = self.conj().scale(&r.recip());
        // |x|^2 carries 2*t; dividing by it flips the exponent sign
        inv.sqrt_d_power = -self.sqrt_d_power;
        Some(inv.canonical())
    }

    pub fn is_one(&self) -> bool {
        self.sqrt_d_power == 0 && self.sub(&Self::one()).is_zero()
    }
}

/// Structural value equality: exact equality of the represented values for
/// scalars sharing a normalization context. Nonzero scalars with different
/// `sqrt_d_power` compare unequal; use [`CycloScalar::eq_in_dim`] when the
/// dimension is known.
impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return true;
        }
        if self.sqrt_d_power != other.sqrt_d_power {
            return self.is_zero() && other.is_zero();
        }
        self.sub(other).is_zero()
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "q{}^{}", self.order, k)?;
            } else {
                write!(f, "({c})*q{}^{}", self.order, k)?;
            }
        }
        if self.sqrt_d_power != 0 {
            write!(f, " * d^(-{}/2)", self.sqrt_d_power)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycloScalarRepr {
    order: u64,
    terms: Vec<(u64, String)>,
    sqrt_d_power: i64,
}

impl Serialize for CycloScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = CycloScalarRepr {
            order: self.order,
            terms: self
                .coeffs
                .iter()
                .map(|(k, c)| (*k, c.to_string()))
                .collect(),
            sqrt_d_power: self.sqrt_d_power,
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = CycloScalarRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("order must be positive"));
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in repr.terms {
            let c: BigRational = c
                .parse()
                .map_err(|e| D::Error::custom(format!("bad rational {c:?}: {e}")))?;
            if coeffs.insert(k, c).is_some() {
                return Err(D::Error::custom(format!("duplicate exponent {k}")));
            }
        }
        Ok(CycloScalar {
            order: repr.order,
            coeffs,
            sqrt_d_power: repr.sqrt_d_power,
        }
        .canonical())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn q(order: u64, k: i64) -> CycloScalar {
        CycloScalar::root_of_unity(order, k).unwrap()
    }

    #[test]
    fn root_of_unity_reduces_exponent() {
        // (n=2, k=3) is -1
        let x = q(2, 3);
        assert_eq!(x, CycloScalar::from_integer(-1));
        // (n=4, k=0) is 1
        assert!(q(4, 0).is_one());
        // (n=3, k=1): q^3 = 1 and q != 1
        let y = q(3, 1);
        assert!(y.pow(3).is_one());
        assert!(!y.is_one());
    }

    #[test]
    fn zero_order_rejected() {
        assert!(matches!(
            CycloScalar::root_of_unity(0, 1),
            Err(Error::InvalidOrder)
        ));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = q(3, 0).add(&q(3, 1)).add(&q(3, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn embedding_then_reducing_is_identity() {
        // the same root expressed over a larger order compares equal
        assert_eq!(q(6, 2), q(3, 1));
        assert_eq!(q(12, 3), CycloScalar::imaginary_unit());
        let x = q(3, 1).scale(&rat(2, 5));
        assert_eq!(x.add(&q(12, 0).sub(&q(12, 0))), x);
    }

    #[test]
    fn geometric_sum_vanishes_up_to_64() {
        for n in 2..=64u64 {
            let mut s = CycloScalar::zero();
            for k in 0..n {
                s = s.add(&q(n, k as i64));
            }
            assert!(s.is_zero(), "sum of all order-{n} roots should vanish");
        }
    }

    #[test]
    fn relation_table_rank_is_n_minus_phi() {
        // The subcycle relations must span the full kernel of evaluation,
        // whose dimension is n - phi(n). Each generator is a vanishing
        // geometric sum, so span ⊆ kernel; matching ranks forces equality,
        // which is what makes the zero test complete.
        fn phi(n: u64) -> usize {
            (1..=n).filter(|&k| gcd_u64(k, n) == 1).count()
        }
        for n in 1..=64u64 {
            assert_eq!(
                relation_rank(n),
                n as usize - phi(n),
                "reduction rank wrong at order {n}"
            );
        }
    }

    #[test]
    fn conj_of_i_is_minus_i() {
        let i = CycloScalar::imaginary_unit();
        assert_eq!(i.conj(), i.neg());
    }

    #[test]
    fn conj_is_an_involution() {
        let x = q(12, 5).scale(&rat(3, 7)).add(&q(12, 2).scale(&rat(-1, 2)));
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn sqrt_d_power_adds_under_mul() {
        // (2^{-1/2}) * (2^{-1/2}) = 1/2
        let h = CycloScalar::one().with_sqrt_d_power(1);
        let p = h.mul(&h);
        assert_eq!(p.sqrt_d_power(), 2);
        assert!(p.eq_in_dim(&CycloScalar::from_rational(rat(1, 2)), 2));
    }

    #[test]
    fn approx_values() {
        // q over n=4 -> (0, 1)
        let v = q(4, 1).to_approx(1);
        assert!((v.re).abs() < 1e-15 && (v.im - 1.0).abs() < 1e-15);
        // (1/sqrt 2)(1 + q) over n=2 -> (0, 0)
        let v = CycloScalar::one()
            .add(&q(2, 1))
            .with_sqrt_d_power(1)
            .to_approx(2);
        assert!(v.norm() < 1e-15);
        // (1/sqrt 3)(q^2 + q + 1) over n=3 -> (0, 0)
        let v = q(3, 0)
            .add(&q(3, 1))
            .add(&q(3, 2))
            .with_sqrt_d_power(1)
            .to_approx(3);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn abs_squared_examples() {
        // (1/sqrt 2)(1 + i): |1+i|^2/2 = 1
        let x = CycloScalar::one()
            .add(&CycloScalar::imaginary_unit())
            .with_sqrt_d_power(1);
        assert!(x.abs_squared().eq_in_dim(&CycloScalar::one(), 2));
        // q^k has modulus 1
        for k in 0..5 {
            assert!(q(5, k).abs_squared().is_one());
        }
        // (1/sqrt 3)(1 + q) over n=3: |1 + e^{2 pi i/3}|^2 / 3 = 1/3
        // oracle: numeric evaluation of the same expression
        let x = CycloScalar::one().add(&q(3, 1)).with_sqrt_d_power(1);
        let m = x.abs_squared();
        assert!(m.eq_in_dim(&CycloScalar::from_rational(rat(1, 3)), 3));
        let numeric = {
            let re = 1.0 + (2.0 * std::f64::consts::PI / 3.0).cos();
            let im = (2.0 * std::f64::consts::PI / 3.0).sin();
            (re * re + im * im) / 3.0
        };
        assert!((m.to_approx(3).re - numeric).abs() < 1e-14);
        assert_eq!(m, m.conj());
    }

    #[test]
    fn fold_perfect_square_dimension() {
        // 4^{-1/2} = 1/2 exactly
        let x = CycloScalar::one().with_sqrt_d_power(1).fold_sqrt_d(4);
        assert_eq!(x.sqrt_d_power(), 0);
        assert_eq!(x, CycloScalar::from_rational(rat(1, 2)));
    }

    #[test]
    fn normal_form_collapses_relations() {
        // 2 + q + q^2 over n=3 reduces to the constant 1
        let x = CycloScalar::from_integer(2).add(&q(3, 1)).add(&q(3, 2));
        let nf = x.normal_form();
        assert!(nf.is_one());
    }

    #[test]
    fn inverse_of_single_terms_and_gaussians() {
        let x = q(8, 3).scale(&rat(2, 5));
        let inv = x.try_inverse().unwrap();
        assert!(x.mul(&inv).is_one());
        // 1 + i is invertible since |1+i|^2 = 2
        let g = CycloScalar::one().add(&CycloScalar::imaginary_unit());
        let inv = g.try_inverse().unwrap();
        assert!(g.mul(&inv).is_one());
        assert!(CycloScalar::zero().try_inverse().is_none());
    }

    #[test]
    fn inv_sqrt_two_squares_to_half() {
        let h = CycloScalar::inv_sqrt_two();
        assert_eq!(h.mul(&h), CycloScalar::from_rational(rat(1, 2)));
        assert_eq!(h.conj(), h);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let x = q(12, 7)
            .scale(&rat(-3, 4))
            .add(&q(12, 1).scale(&rat(1, 6)))
            .with_sqrt_d_power(1);
        let text = serde_json::to_string(&x).unwrap();
        let back: CycloScalar = serde_json::from_str(&text).unwrap();
        assert_eq!(x, back);
        assert_eq!(text, serde_json::to_string(&back).unwrap());
    }

    #[test]
    fn approx_scalar_json_is_a_pair() {
        let a = ApproxScalar::new(0.5, -0.25);
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0.5,-0.25]");
        let back: ApproxScalar = serde_json::from_str("[0.5,-0.25]").unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn to_approx_is_stable_under_normalization() {
        let x = q(6, 1)
            .add(&q(6, 3).scale(&rat(2, 3)))
            .add(&q(6, 5).scale(&rat(-1, 2)));
        let before = x.to_approx(6);
        let after = x.normal_form().to_approx(6);
        assert!((before - after).norm() < 1e-12);
    }
}
