use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::LaurentPoly;

/// Finite multiset of integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntMultiset {
    counts: BTreeMap<i64, u64>,
}

/// Signed multiplicity differences `a - b`, zero entries omitted.
pub type MultisetDiff = BTreeMap<i64, i64>;

impl IntMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// The integer interval `[lo, hi]`, each value once; empty when `lo > hi`.
    pub fn interval(lo: i64, hi: i64) -> Self {
        (lo..=hi).collect()
    }

    pub fn insert(&mut self, value: i64) {
        self.insert_many(value, 1);
    }

    pub fn insert_many(&mut self, value: i64, mult: u64) {
        if mult > 0 {
            *self.counts.entry(value).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, value: i64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }

    /// Sum of multiplicities, preserving `self`.
    pub fn union(&self, other: &IntMultiset) -> IntMultiset {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn extend_from(&mut self, other: &IntMultiset) {
        for (&v, &m) in &other.counts {
            self.insert_many(v, m);
        }
    }

    pub fn diff(&self, other: &IntMultiset) -> MultisetDiff {
        let mut out = MultisetDiff::new();
        for (&v, &m) in &self.counts {
            out.insert(v, m as i64);
        }
        for (&v, &m) in &other.counts {
            *out.entry(v).or_insert(0) -= m as i64;
        }
        out.retain(|_, d| *d != 0);
        out
    }

    /// Elements in ascending order, repeated by multiplicity.
    pub fn to_sorted_vec(&self) -> Vec<i64> {
        self.counts
            .iter()
            .flat_map(|(&v, &m)| std::iter::repeat_n(v, m as usize))
            .collect()
    }

    pub fn min(&self) -> Option<i64> {
        self.counts.keys().next().copied()
    }

    pub fn max(&self) -> Option<i64> {
        self.counts.keys().next_back().copied()
    }
}

/// The operations `ms_ops` groups together.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MsOutcome {
    Union(IntMultiset),
    Equal(bool),
    Diff(MultisetDiff),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MsOp {
    Union,
    Eq,
    Diff,
}

pub fn ms_ops(a: &IntMultiset, b: &IntMultiset, kind: MsOp) -> MsOutcome {
    match kind {
        MsOp::Union => MsOutcome::Union(a.union(b)),
        MsOp::Eq => MsOutcome::Equal(a == b),
        MsOp::Diff => MsOutcome::Diff(a.diff(b)),
    }
}

/// `sum m(v) * L^v`.
pub fn ms_to_poly(m: &IntMultiset) -> LaurentPoly {
    LaurentPoly::from_terms(m.counts.iter().map(|(&v, &c)| (v, c)))
}

impl FromIterator<i64> for IntMultiset {
    fn from_iter<I: IntoIterator<Item = i64>>(iter: I) -> Self {
        let mut m = IntMultiset::new();
        for v in iter {
            m.insert(v);
        }
        m
    }
}

impl fmt::Display for IntMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.to_sorted_vec().iter().map(|v| v.to_string()).collect();
        write!(f, "{{{{{}}}}}", items.join(","))
    }
}

impl Serialize for IntMultiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, u64)> = self.counts.iter().map(|(&v, &m)| (v, m)).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMultiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, u64)> = Vec::deserialize(deserializer)?;
        let mut m = IntMultiset::new();
        for (v, k) in pairs {
            m.insert_many(v, k);
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_free_equality() {
        let a: IntMultiset = [0, 0, 1].into_iter().collect();
        let b: IntMultiset = [0, 1, 0].into_iter().collect();
        assert_eq!(ms_ops(&a, &b, MsOp::Eq), MsOutcome::Equal(true));
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn union_adds_multiplicities() {
        let a: IntMultiset = [0].into_iter().collect();
        let u = a.union(&a);
        assert_eq!(u.multiplicity(0), 2);
        assert_eq!(u.to_sorted_vec(), vec![0, 0]);
    }

    #[test]
    fn diff_reports_signed_deltas() {
        let a: IntMultiset = [1, 1, 2].into_iter().collect();
        let b: IntMultiset = [1, 3].into_iter().collect();
        let d = a.diff(&b);
        assert_eq!(d, [(1, 1), (2, 1), (3, -1)].into_iter().collect());
        assert!(a.diff(&a).is_empty());
    }

    #[test]
    fn to_poly() {
        assert!(ms_to_poly(&IntMultiset::new()).is_zero());
        let m: IntMultiset = [0, 0, -1].into_iter().collect();
        assert_eq!(ms_to_poly(&m), LaurentPoly::from_terms([(0, 2), (-1, 1)]));
    }

    #[test]
    fn intervals() {
        assert_eq!(IntMultiset::interval(-2, 1).to_sorted_vec(), vec![-2, -1, 0, 1]);
        assert!(IntMultiset::interval(3, 2).is_empty());
    }

    #[test]
    fn json_sorted_pairs() {
        let m: IntMultiset = [2, -1, 2].into_iter().collect();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[-1,1],[2,2]]");
        assert_eq!(m.to_string(), "{{-1,2,2}}");
    }
}
