//! The floor sums `sht` and `theta`, and the modified fractional part.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exactnum::Fraction;
use crate::repspec::RepSpec;

/// `sht(j) = sum_lambda sum_{i=1..d_lambda} floor(i j / p)`.
pub fn sht(s: &RepSpec, j: i64) -> i64 {
    let p = s.p();
    s.parts()
        .iter()
        .map(|&d| (1..=d).map(|i| Integer::div_floor(&(i * j), &p)).sum::<i64>())
        .sum()
}

/// `theta(y) = 1 - floor(y) + floor(p y) - sum_{(lambda, i) in I*} floor(i y)`
/// for `0 < y <= 1`.
pub fn theta(s: &RepSpec, y: &Fraction) -> Result<i64> {
    if !y.is_positive() || *y > Fraction::one() {
        return Err(Error::OutOfDomain(y.to_string()));
    }
    match y.to_i64_parts() {
        Some((num, den)) => Ok(theta_ratio(s, num, den)),
        None => Ok(theta_big(s, y, false)),
    }
}

/// Machine-integer path for `y = num / den` already checked to lie in `(0, 1]`.
pub(crate) fn theta_ratio(s: &RepSpec, num: i64, den: i64) -> i64 {
    let floor = |k: i64| Integer::div_floor(&(k * num), &den);
    let inner: i64 = s.parts().iter().map(|&d| (1..=d).map(floor).sum::<i64>()).sum();
    1 - floor(1) + floor(s.p()) - inner
}

fn theta_big(s: &RepSpec, y: &Fraction, include_zero: bool) -> i64 {
    let fl = |k: i64| -> BigInt { (Fraction::from_int(k) * y.clone()).floor() };
    let start = if include_zero { 0 } else { 1 };
    let mut acc: BigInt = BigInt::from(1) - fl(1) + fl(s.p());
    for &d in s.parts() {
        for i in start..=d {
            acc -= fl(i);
        }
    }
    acc.to_i64().expect("theta fits in i64")
}

/// `theta` with the inner sum running over the full index set, including
/// the `i = 0` entries of each block.
pub fn theta_full_index(s: &RepSpec, y: &Fraction) -> Result<i64> {
    if !y.is_positive() || *y > Fraction::one() {
        return Err(Error::OutOfDomain(y.to_string()));
    }
    Ok(theta_big(s, y, true))
}

/// `{x}' = x - floor(x)` for non-integers and `1` for integers.
pub fn frac_prime(x: &Fraction) -> Fraction {
    if x.is_integer() {
        Fraction::one()
    } else {
        x - &Fraction::from(x.floor())
    }
}
