use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::fraction::Fraction;
use super::gcd::{gcd_with_cofactors, primitive_part};
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Rational function in `L` with integer coefficients, always held in
/// canonical form:
///
/// * `den` is an ordinary polynomial whose constant term is non-zero and
///   positive; every power of `L` lives in `num`;
/// * `num` and `den` share no non-constant factor over `Q`;
/// * the gcd of all coefficients of `num` and `den` together is 1;
/// * zero is `0 / 1`.
///
/// Two rational functions are equal iff their canonical forms agree, so
/// the derived `PartialEq` is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatFuncRepr", into = "RatFuncRepr")]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl TryFrom<RatFuncRepr> for RatFunc {
    type Error = Error;
    fn try_from(r: RatFuncRepr) -> Result<Self> {
        RatFunc::new(r.num, r.den)
    }
}

impl From<RatFunc> for RatFuncRepr {
    fn from(r: RatFunc) -> Self {
        RatFuncRepr { num: r.num, den: r.den }
    }
}

/// `rf_make`: canonical form of `num / den`.
pub fn rf_make(num: LaurentPoly, den: LaurentPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

/// `rf_eq`: cross-multiplication test, independent of canonicalization.
pub fn rf_eq(a: &RatFunc, b: &RatFunc) -> bool {
    &a.num * &b.den == &b.num * &a.den
}

/// `rf_eval`: exact value at `x`.
pub fn rf_eval(a: &RatFunc, x: &Fraction) -> Result<Fraction> {
    a.eval(x)
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (en, u) = num.to_dense();
        let (ed, v) = den.to_dense();
        let (cu, u) = primitive_part(&u);
        let (cv, v) = primitive_part(&v);
        let (_, u, v) = gcd_with_cofactors(&u, &v);
        let c = cu.gcd(&cv);
        let (mut cu, mut cv) = (cu / &c, cv / &c);
        if v[0].is_negative() {
            cu = -cu;
            cv = -cv;
        }
        let num = LaurentPoly::from_dense(en - ed, u).scale(&cu);
        let den = LaurentPoly::from_dense(0, v).scale(&cv);
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// `L^e` as a rational function.
    pub fn l_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::l_pow(e))
    }

    /// A Laurent polynomial is already canonical once its content sign is
    /// carried by the numerator.
    pub fn from_poly(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(p)` when the function is a Laurent polynomial.
    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, n: u32) -> Self {
        RatFunc::new(self.num.pow(n), self.den.pow(n)).expect("non-zero denominator")
    }

    /// Difference of degrees `deg num - deg den` and the ratio of leading
    /// coefficients, i.e. the behaviour as `L -> infinity`.
    pub fn leading_term(&self) -> Option<(i64, Fraction)> {
        let n = self.num.max_exp()?;
        let d = self.den.max_exp()?;
        let ratio = Fraction::from_big(
            self.num.leading_coeff()?.clone(),
            self.den.leading_coeff()?.clone(),
        )
        .ok()?;
        Some((n - d, ratio))
    }

    pub fn eval(&self, x: &Fraction) -> Result<Fraction> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(x.to_string()));
        }
        Ok(&self.num.eval(x)? / &d)
    }
}

/// Value of `num / den` at `x` for a possibly unreduced pair: the linear
/// factor vanishing at `x` is divided out of both parts by exact synthetic
/// division for as long as both vanish there.
pub fn limit_at(num: &LaurentPoly, den: &LaurentPoly, x: &Fraction) -> Result<Fraction> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    // Work with ordinary polynomials; the monomial parts are units away
    // from x = 0.
    let (en, mut u) = num.to_dense();
    let (ed, mut v) = den.to_dense();
    let (s, t) = (x.numer().clone(), x.denom().clone());
    // (t L - s) vanishes exactly at x.
    let linear = vec![-s.clone(), t.clone()];
    let vanishes = |p: &[BigInt]| -> bool {
        // Homogenized evaluation: sum c_k s^k t^(n-k) = t^n p(s/t).
        let n = p.len().saturating_sub(1);
        let mut acc = BigInt::zero();
        let mut sp = BigInt::one();
        let mut tp: Vec<BigInt> = Vec::with_capacity(n + 1);
        let mut cur = BigInt::one();
        for _ in 0..=n {
            tp.push(cur.clone());
            cur *= &t;
        }
        for (k, c) in p.iter().enumerate() {
            acc += c * &sp * &tp[n - k];
            sp *= &s;
        }
        acc.is_zero()
    };
    while !u.is_empty() && !v.is_empty() && vanishes(&u) && vanishes(&v) {
        u = super::gcd::div_exact_dense(&u, &linear)
            .ok_or_else(|| Error::Inconsistent("synthetic division left a remainder".into()))?;
        v = super::gcd::div_exact_dense(&v, &linear)
            .ok_or_else(|| Error::Inconsistent("synthetic division left a remainder".into()))?;
    }
    let n = LaurentPoly::from_dense(en, u);
    let d = LaurentPoly::from_dense(ed, v);
    let dv = d.eval(x)?;
    if dv.is_zero() {
        return Err(Error::PoleAtPoint(x.to_string()));
    }
    Ok(&n.eval(x)? / &dv)
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("non-zero denominator");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("non-zero denominator")
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("non-zero denominator")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn rf(n: &[(i64, i64)], d: &[(i64, i64)]) -> RatFunc {
        RatFunc::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn common_factor_cancels() {
        let r = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]);
        assert_eq!(r.num(), &poly(&[(1, 1), (0, 1)]));
        assert!(r.den().is_one());
    }

    #[test]
    fn negative_exponents_cleared() {
        let r = rf(&[(0, 1)], &[(-2, 1)]);
        assert_eq!(r.num(), &poly(&[(2, 1)]));
        assert!(r.den().is_one());
    }

    #[test]
    fn content_reduction_and_sign() {
        let r = rf(&[(1, 2)], &[(0, 4)]);
        assert_eq!(r.num(), &poly(&[(1, 1)]));
        assert_eq!(r.den(), &poly(&[(0, 2)]));
        let s = rf(&[(0, 3)], &[(1, 2), (0, -6)]);
        assert_eq!(s.num(), &poly(&[(0, -3)]));
        assert_eq!(s.den(), &poly(&[(1, -2), (0, 6)]));
    }

    #[test]
    fn monomial_in_denominator_moves_up() {
        // 1 / (L^3 + L^2) = L^-2 / (L + 1)
        let r = rf(&[(0, 1)], &[(3, 1), (2, 1)]);
        assert_eq!(r.num(), &poly(&[(-2, 1)]));
        assert_eq!(r.den(), &poly(&[(1, 1), (0, 1)]));
    }

    #[test]
    fn zero_denominator_and_zero_value() {
        assert!(matches!(RatFunc::new(poly(&[(0, 1)]), LaurentPoly::zero()), Err(Error::ZeroDenominator)));
        let z = rf(&[], &[(5, 3), (0, 1)]);
        assert_eq!(z, RatFunc::zero());
    }

    #[test]
    fn equality_routes_agree() {
        let a = rf(&[(1, 1), (0, 1)], &[(0, 1)]);
        let b = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]);
        let c = rf(&[(1, 1)], &[(0, 1)]);
        assert!(rf_eq(&a, &b));
        assert_eq!(a, b);
        assert!(!rf_eq(&c, &a));
    }

    #[test]
    fn evaluation_after_reduction() {
        let a = rf(&[(1, 1), (0, 1)], &[(0, 1)]);
        assert_eq!(rf_eval(&a, &Fraction::one()).unwrap(), Fraction::from_int(2));
        let b = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]);
        assert_eq!(rf_eval(&b, &Fraction::one()).unwrap(), Fraction::from_int(2));
        let pole = rf(&[(0, 1)], &[(1, 1), (0, -1)]);
        assert!(matches!(rf_eval(&pole, &Fraction::one()), Err(Error::PoleAtPoint(_))));
    }

    #[test]
    fn limit_of_unreduced_pair() {
        // (L^3 - 1)(L - 1) / (L - 1)^2 at L = 1 is 3.
        let n = &poly(&[(3, 1), (0, -1)]) * &poly(&[(1, 1), (0, -1)]);
        let d = poly(&[(1, 1), (0, -1)]).pow(2);
        assert_eq!(limit_at(&n, &d, &Fraction::one()).unwrap(), Fraction::from_int(3));
        // at L = 1/2 for (2L - 1)(L + 1) / (2L - 1)
        let half = Fraction::new(1, 2).unwrap();
        let n = &poly(&[(1, 2), (0, -1)]) * &poly(&[(1, 1), (0, 1)]);
        let d = poly(&[(1, 2), (0, -1)]);
        assert_eq!(limit_at(&n, &d, &half).unwrap(), Fraction::new(3, 2).unwrap());
        assert!(limit_at(&poly(&[(0, 1)]), &d, &half).is_err());
    }

    #[test]
    fn arithmetic() {
        let x = rf(&[(0, 1)], &[(1, 1), (0, -1)]);
        let y = rf(&[(0, 1)], &[(1, 1), (0, 1)]);
        // 1/(L-1) + 1/(L+1) = 2L / (L^2 - 1)
        assert_eq!(&x + &y, rf(&[(1, 2)], &[(2, 1), (0, -1)]));
        assert_eq!(&x - &x, RatFunc::zero());
        assert_eq!(&(&x * &y) * &rf(&[(2, 1), (0, -1)], &[(0, 1)]), RatFunc::one());
        assert_eq!(x.div(&x).unwrap(), RatFunc::one());
        assert_eq!(x.recip().unwrap(), rf(&[(1, 1), (0, -1)], &[(0, 1)]));
    }

    #[test]
    fn json_round_trip_recanonicalizes() {
        let r = rf(&[(2, 1), (0, -1)], &[(1, 1), (0, -1)]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"num":[[0,1],[1,1]],"den":[[0,1]]}"#);
        let raw = r#"{"num":[[0,-1],[2,1]],"den":[[0,-1],[1,1]]}"#;
        let back: RatFunc = serde_json::from_str(raw).unwrap();
        assert_eq!(back, r);
    }
}
