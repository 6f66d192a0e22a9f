use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::fraction::Fraction;
use crate::error::{Error, Result};

/// Integer Laurent polynomial in the formal variable `L`.
///
/// Terms are kept sorted by exponent with no zero coefficients; the empty
/// term list is the zero polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

/// The three ring operations exposed through [`lp_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpOp {
    Add,
    Sub,
    Mul,
}

pub fn lp_arith(a: &LaurentPoly, b: &LaurentPoly, kind: LpOp) -> LaurentPoly {
    match kind {
        LpOp::Add => a + b,
        LpOp::Sub => a - b,
        LpOp::Mul => a * b,
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let c = coeff.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(exp, c)] }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `L^exp`.
    pub fn l_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// combining repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigInt::zero) += c.into();
        }
        LaurentPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Dense coefficients starting at exponent `offset`.
    pub fn from_dense(offset: i64, coeffs: Vec<BigInt>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (offset + k as i64, c))
            .collect();
        LaurentPoly { terms }
    }

    /// Sum of `L^e` over the given exponents (with repetition).
    pub fn sum_of_powers<I: IntoIterator<Item = i64>>(exps: I) -> Self {
        Self::from_terms(exps.into_iter().map(|e| (e, 1)))
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    /// Multiplication by `L^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Sum of the coefficients, i.e. the value at `L = 1`.
    pub fn coeff_sum(&self) -> BigInt {
        self.terms.iter().map(|t| &t.1).sum()
    }

    /// Dense coefficient vector of `self * L^(-min_exp)`, lowest degree first.
    pub fn to_dense(&self) -> (i64, Vec<BigInt>) {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => {
                let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
                for (e, c) in &self.terms {
                    v[(e - lo) as usize] = c.clone();
                }
                (lo, v)
            }
            _ => (0, Vec::new()),
        }
    }

    pub fn eval(&self, x: &Fraction) -> Result<Fraction> {
        if self.is_zero() {
            return Ok(Fraction::zero());
        }
        if x.is_zero() {
            if self.min_exp().unwrap() < 0 {
                return Err(Error::PoleAtPoint(x.to_string()));
            }
            return Ok(Fraction::from(self.coeff(0)));
        }
        let (lo, dense) = self.to_dense();
        // Horner over the dense part, then the monomial factor x^lo.
        let mut acc = Fraction::zero();
        for c in dense.iter().rev() {
            acc = &(&acc * x) + &Fraction::from(c.clone());
        }
        let mut xp = Fraction::one();
        let base = if lo < 0 { &Fraction::one() / x } else { x.clone() };
        for _ in 0..lo.unsigned_abs() {
            xp = &xp * &base;
        }
        Ok(&acc * &xp)
    }

    /// Exact quotient `self / divisor` in the Laurent ring `Z[L, L^-1]`,
    /// or `None` when the division leaves a remainder or a non-integer
    /// coefficient.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_a, a) = self.to_dense();
        let (lo_b, b) = divisor.to_dense();
        let q = super::gcd::div_exact_dense(&a, &b)?;
        Some(LaurentPoly::from_dense(lo_a - lo_b, q))
    }

    fn from_sorted_unchecked(terms: Vec<(i64, BigInt)>) -> Self {
        LaurentPoly { terms }
    }

    fn merge(&self, other: &LaurentPoly, negate_other: bool) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
            let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
            if take_a {
                out.push(a[i].clone());
                i += 1;
            } else if take_b {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        LaurentPoly::from_sorted_unchecked(out)
    }

    fn product(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let lo = self.min_exp().unwrap() + other.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let span = (hi - lo + 1) as usize;
        let work = self.terms.len() * other.terms.len();
        if span <= 4 * work + 64 {
            let mut acc = vec![BigInt::zero(); span];
            for (ea, ca) in &self.terms {
                for (eb, cb) in &other.terms {
                    acc[(ea + eb - lo) as usize] += ca * cb;
                }
            }
            LaurentPoly::from_dense(lo, acc)
        } else {
            Self::from_terms(
                self.terms
                    .iter()
                    .flat_map(|(ea, ca)| other.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
            )
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.product(rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (*e, -c)).collect())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "L")?,
                (1, false) => write!(f, "{abs}*L")?,
                (_, true) => write!(f, "L^{e}")?,
                (_, false) => write!(f, "{abs}*L^{e}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients serialize as JSON integers when they fit in `i64` and as
/// decimal strings otherwise.
pub(crate) fn bigint_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

pub(crate) fn bigint_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("coefficient {n} is not an integer")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, serde_json::Value)> =
            self.terms.iter().map(|(e, c)| (*e, bigint_to_json(c))).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs: Vec<(i64, serde_json::Value)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, v) in pairs {
            terms.push((e, bigint_from_json(&v).map_err(D::Error::custom)?));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[(1, 1), (0, -1)]);
        let b = poly(&[(1, 1), (0, 1)]);
        assert_eq!(lp_arith(&a, &b, LpOp::Mul), poly(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let a = poly(&[(-3, 2), (4, -1)]);
        assert_eq!(lp_arith(&a, &LaurentPoly::zero(), LpOp::Add), a);
        assert!(lp_arith(&a, &a, LpOp::Sub).is_zero());
        assert!(poly(&[(2, 0), (1, 0)]).is_zero());
    }

    #[test]
    fn geometric_series_division() {
        // L^3 - 1 = (L - 1)(L^2 + L + 1)
        let num = poly(&[(3, 1), (0, -1)]);
        let den = poly(&[(1, 1), (0, -1)]);
        assert_eq!(num.div_exact(&den), Some(poly(&[(2, 1), (1, 1), (0, 1)])));
        assert_eq!(poly(&[(2, 1), (0, 1)]).div_exact(&den), None);
        assert_eq!(poly(&[(1, 1)]).div_exact(&LaurentPoly::constant(2)), None);
    }

    #[test]
    fn laurent_division_with_negative_exponents() {
        let num = poly(&[(-2, 1), (-4, -1)]); // L^-4 (L^2 - 1)
        let den = poly(&[(0, 1), (-1, 1)]); // L^-1 (L + 1)
        assert_eq!(num.div_exact(&den), Some(poly(&[(-2, 1), (-3, -1)])));
    }

    #[test]
    fn evaluation() {
        let p = poly(&[(1, 1), (0, 1)]);
        assert_eq!(p.eval(&Fraction::one()).unwrap(), Fraction::from_int(2));
        let q = poly(&[(-2, 4), (1, 1)]);
        let half = Fraction::new(1, 2).unwrap();
        assert_eq!(q.eval(&half).unwrap(), Fraction::new(33, 2).unwrap());
        assert!(matches!(q.eval(&Fraction::zero()), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&[(2, 1), (0, -1)]).to_string(), "L^2 - 1");
        assert_eq!(poly(&[(1, -2), (-1, 3)]).to_string(), "-2*L + 3*L^-1");
    }

    #[test]
    fn json_pairs_sorted() {
        let p = poly(&[(3, 1), (-1, -2)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[-1,-2],[3,1]]");
        let big = LaurentPoly::monomial(0, BigInt::from(i64::MAX) * 4);
        let s = serde_json::to_string(&big).unwrap();
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let x = poly(&[(1, 1), (0, -1)]);
        let mut acc = LaurentPoly::one();
        for n in 0..6u32 {
            assert_eq!(x.pow(n), acc);
            acc = &acc * &x;
        }
    }
}
