//! The input datum: a prime `p` and a block vector `d = (d_1, ..., d_l)`
//! with `0 <= d_i <= p - 1`, plus every combinatorial quantity derived
//! from it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime together with the block dimensions of a linear action.
///
/// Blocks are stored as given; every derived quantity is invariant under
/// permuting them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RepSpecJson", into = "RepSpecJson")]
pub struct RepSpec {
    p: i64,
    parts: Vec<i64>,
}

/// JSON shape `{"p": 7, "d": [5]}`; `"d_plus"` may replace `"d"`.
#[derive(Serialize, Deserialize)]
struct RepSpecJson {
    p: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d_plus: Option<Vec<i64>>,
}

impl TryFrom<RepSpecJson> for RepSpec {
    type Error = Error;
    fn try_from(j: RepSpecJson) -> Result<Self> {
        match (j.d, j.d_plus) {
            (Some(d), None) => RepSpec::new(j.p, d),
            (None, Some(dp)) => RepSpec::from_plus(j.p, &dp),
            (Some(d), Some(dp)) => {
                let s = RepSpec::new(j.p, d)?;
                if s.plus_parts() != dp {
                    return Err(Error::Parse("\"d\" and \"d_plus\" disagree".into()));
                }
                Ok(s)
            }
            (None, None) => Err(Error::Parse("one of \"d\" or \"d_plus\" is required".into())),
        }
    }
}

impl From<RepSpec> for RepSpecJson {
    fn from(s: RepSpec) -> Self {
        RepSpecJson { p: s.p, d: Some(s.parts), d_plus: None }
    }
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// All primes `<= max`, ascending.
pub fn primes_up_to(max: i64) -> Vec<i64> {
    (2..=max).filter(|&n| is_prime(n)).collect()
}

/// An element `(lambda, i)` of the index set, `lambda` counted from 1.
pub type Index = (usize, i64);

impl RepSpec {
    pub fn new(p: i64, parts: Vec<i64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if parts.is_empty() {
            return Err(Error::EmptyParts);
        }
        if let Some(&bad) = parts.iter().find(|&&d| d < 0 || d > p - 1) {
            return Err(Error::PartOutOfRange { part: bad, max: p - 1 });
        }
        Ok(RepSpec { p, parts })
    }

    /// Builds the spec from the `d_plus = d + 1` convention (block sizes).
    pub fn from_plus(p: i64, plus: &[i64]) -> Result<Self> {
        if let Some(&bad) = plus.iter().find(|&&d| d < 1 || d > p) {
            return Err(Error::InvalidPlusPart { part: bad, max: p });
        }
        RepSpec::new(p, plus.iter().map(|d| d - 1).collect())
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Block sizes `d_i + 1`.
    pub fn plus_parts(&self) -> Vec<i64> {
        self.parts.iter().map(|d| d + 1).collect()
    }

    /// Number of blocks `l`.
    pub fn l(&self) -> i64 {
        self.parts.len() as i64
    }

    /// Ambient dimension `d = sum (1 + d_i)`.
    pub fn dim(&self) -> i64 {
        self.parts.iter().map(|d| d + 1).sum()
    }

    /// `D = sum d_i (d_i + 1) / 2`.
    pub fn bold_d(&self) -> i64 {
        self.parts.iter().map(|d| d * (d + 1) / 2).sum()
    }

    /// `gamma = D - p`, the discrepancy of the exceptional divisor.
    pub fn gamma(&self) -> i64 {
        self.bold_d() - self.p
    }

    /// `M = max d_i`.
    pub fn max_part(&self) -> i64 {
        self.parts.iter().copied().max().unwrap_or(0)
    }

    /// `N_r`: number of `(lambda, i)` in `I*` with `r | i`.
    pub fn n_r(&self, r: i64) -> i64 {
        assert!(r >= 1, "n_r requires r >= 1");
        self.parts.iter().map(|d| d / r).sum()
    }

    /// `I* = {(lambda, i) : 1 <= i <= d_lambda}` in lexicographic order.
    pub fn index_set(&self) -> Vec<Index> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(k, &d)| (1..=d).map(move |i| (k + 1, i)))
            .collect()
    }

    /// `I = {(lambda, j) : 0 <= j <= d_lambda}` in lexicographic order.
    pub fn full_index_set(&self) -> Vec<Index> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(k, &d)| (0..=d).map(move |j| (k + 1, j)))
            .collect()
    }
}

/// `plus_convert`: `d_plus -> d`.
pub fn plus_to_parts(plus: &[i64]) -> Vec<i64> {
    plus.iter().map(|d| d - 1).collect()
}

/// Inverse of [`plus_to_parts`].
pub fn parts_to_plus(parts: &[i64]) -> Vec<i64> {
    parts.iter().map(|d| d + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn golden_spec() {
        let s = RepSpec::new(7, vec![5]).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(s.l(), 1);
        assert_eq!(s.bold_d(), 15);
        assert_eq!(s.gamma(), 8);
        assert_eq!((s.n_r(1), s.n_r(2), s.n_r(5)), (5, 2, 1));
        assert_eq!(s.n_r(6), 0);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(RepSpec::new(5, vec![5]), Err(Error::PartOutOfRange { part: 5, max: 4 })));
        assert!(matches!(RepSpec::new(4, vec![1]), Err(Error::NotPrime(4))));
        assert!(matches!(RepSpec::new(5, vec![-1]), Err(Error::PartOutOfRange { .. })));
        assert!(matches!(RepSpec::new(5, vec![]), Err(Error::EmptyParts)));
        assert!(matches!(RepSpec::from_plus(7, &[0]), Err(Error::InvalidPlusPart { .. })));
        assert!(matches!(RepSpec::from_plus(7, &[8]), Err(Error::InvalidPlusPart { .. })));
    }

    #[test]
    fn derived_quantities_two_blocks() {
        let s = RepSpec::new(7, vec![3, 2]).unwrap();
        assert_eq!(s.bold_d(), 9);
        assert_eq!(s.n_r(2), 2);
        assert_eq!(RepSpec::new(7, vec![0, 0, 0]).unwrap().bold_d(), 0);
    }

    #[test]
    fn plus_convention() {
        assert_eq!(plus_to_parts(&[6]), vec![5]);
        assert_eq!(plus_to_parts(&[1, 1]), vec![0, 0]);
        assert_eq!(RepSpec::from_plus(7, &[4, 3]).unwrap().parts(), &[3, 2]);
    }

    #[test]
    fn json_encodings() {
        let a: RepSpec = serde_json::from_str(r#"{"p": 7, "d": [5]}"#).unwrap();
        let b: RepSpec = serde_json::from_str(r#"{"p": 7, "d_plus": [6]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"p":7,"d":[5]}"#);
        assert!(serde_json::from_str::<RepSpec>(r#"{"p": 4, "d": [1]}"#).is_err());
        assert!(serde_json::from_str::<RepSpec>(r#"{"p": 7, "d": [5], "d_plus": [5]}"#).is_err());
    }

    fn spec_strategy() -> impl Strategy<Value = RepSpec> {
        prop::sample::select(vec![2i64, 3, 5, 7, 11, 13]).prop_flat_map(|p| {
            prop::collection::vec(0..p, 1..5).prop_map(move |parts| RepSpec::new(p, parts).unwrap())
        })
    }

    proptest! {
        #[test]
        fn index_set_sums(s in spec_strategy()) {
            let idx = s.index_set();
            prop_assert_eq!(s.n_r(1), idx.len() as i64);
            prop_assert_eq!(idx.iter().map(|&(_, i)| i).sum::<i64>(), s.bold_d());
            for r in 1..=s.p() {
                prop_assert!(s.n_r(r + 1) <= s.n_r(r));
                let direct = idx.iter().filter(|&&(_, i)| i % r == 0).count() as i64;
                prop_assert_eq!(direct, s.n_r(r));
            }
        }

        #[test]
        fn plus_round_trip(s in spec_strategy()) {
            let plus = s.plus_parts();
            prop_assert!(plus.iter().all(|&d| 1 <= d && d <= s.p()));
            let back = RepSpec::from_plus(s.p(), &plus).unwrap();
            prop_assert_eq!(parts_to_plus(back.parts()), plus);
            prop_assert_eq!(&back, &s);
        }
    }
}
