//! Farey sequences and their decomposition into the buckets
//! `F^(j) = F ∩ [j/p, (j+1)/p)`, `F^(p) = {1}`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Fraction;

/// Reduced fractions in `(0, 1]` with denominator at most `order`, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FareySeq {
    pub order: i64,
    pub elems: Vec<Fraction>,
}

impl FareySeq {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements as `(s, r)` pairs, same order as `elems`.
    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.elems
            .iter()
            .map(|f| f.to_i64_parts().expect("Farey elements fit in i64"))
            .collect()
    }
}

pub fn farey_seq(m: i64) -> Result<FareySeq> {
    if m < 1 {
        return Err(Error::InvalidOrder(m));
    }
    let mut pairs: Vec<(i64, i64)> = (1..=m)
        .flat_map(|r| (1..=r).filter(move |s| s.gcd(&r) == 1).map(move |s| (s, r)))
        .collect();
    // s/r < t/q  <=>  s*q < t*r
    pairs.sort_by(|&(s, r), &(t, q)| (s * q).cmp(&(t * r)));
    let elems = pairs
        .into_iter()
        .map(|(s, r)| Fraction::new(s, r).expect("nonzero denominator"))
        .collect();
    Ok(FareySeq { order: m, elems })
}

/// The `p + 1` buckets `F^(0), ..., F^(p)`. Requires `p > order`, so that no
/// fraction other than 1 has the form `j/p`.
pub fn farey_buckets(f: &FareySeq, p: i64) -> Vec<Vec<Fraction>> {
    assert!(p > f.order, "bucketing requires p > order");
    let mut buckets = vec![Vec::new(); (p + 1) as usize];
    for (y, (s, r)) in f.elems.iter().zip(f.pairs()) {
        // floor(p * s / r), equal to p only for y = 1
        let j = Integer::div_floor(&(p * s), &r);
        buckets[j as usize].push(y.clone());
    }
    buckets
}

/// Maximal runs `[a_m, b_m]` of nonempty buckets among `j < p`, returned as
/// the two endpoint lists.
pub fn block_sequences(f: &FareySeq, p: i64) -> Result<(Vec<i64>, Vec<i64>)> {
    let buckets = farey_buckets(f, p);
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut inside = false;
    for j in 0..p {
        let full = !buckets[j as usize].is_empty();
        if full && !inside {
            a.push(j);
        }
        if !full && inside {
            b.push(j - 1);
        }
        inside = full;
    }
    if inside {
        b.push(p - 1);
    }
    if a.is_empty() {
        return Err(Error::TrivialCase);
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(s: i64, r: i64) -> Fraction {
        Fraction::new(s, r).unwrap()
    }

    fn totient(n: i64) -> i64 {
        (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
    }

    #[test]
    fn small_orders() {
        assert_eq!(farey_seq(1).unwrap().elems, vec![fr(1, 1)]);
        assert_eq!(farey_seq(3).unwrap().pairs(), vec![(1, 3), (1, 2), (2, 3), (1, 1)]);
        let f5 = farey_seq(5).unwrap().pairs();
        assert_eq!(
            f5,
            vec![(1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5), (1, 1)]
        );
        assert!(matches!(farey_seq(0), Err(Error::InvalidOrder(0))));
    }

    #[test]
    fn buckets_order_five_prime_seven() {
        let b = farey_buckets(&farey_seq(5).unwrap(), 7);
        assert_eq!(b.len(), 8);
        assert!(b[0].is_empty());
        // 1/3 > 2/7, so it opens bucket 2
        assert_eq!(b[1], vec![fr(1, 5), fr(1, 4)]);
        assert_eq!(b[2], vec![fr(1, 3), fr(2, 5)]);
        assert_eq!(b[7], vec![fr(1, 1)]);
        assert!(b[6].is_empty());
    }

    #[test]
    fn order_one_is_trivial() {
        let f = farey_seq(1).unwrap();
        let b = farey_buckets(&f, 5);
        assert!(b[..5].iter().all(Vec::is_empty));
        assert_eq!(b[5], vec![fr(1, 1)]);
        assert!(matches!(block_sequences(&f, 5), Err(Error::TrivialCase)));
    }

    #[test]
    fn block_examples() {
        assert_eq!(block_sequences(&farey_seq(5).unwrap(), 7).unwrap(), (vec![1], vec![5]));
        assert_eq!(block_sequences(&farey_seq(2).unwrap(), 11).unwrap(), (vec![5], vec![5]));
    }

    #[test]
    fn reflection_between_buckets() {
        for (m, p) in [(5, 7), (4, 11), (6, 13), (10, 11)] {
            let b = farey_buckets(&farey_seq(m).unwrap(), p);
            for j in 1..p as usize {
                let mut reflected: Vec<Fraction> =
                    b[j].iter().map(|y| &Fraction::one() - y).collect();
                reflected.sort();
                assert_eq!(reflected, b[p as usize - 1 - j], "m={m} p={p} j={j}");
            }
        }
    }

    proptest! {
        #[test]
        fn totient_count(m in 1i64..40) {
            let expect: i64 = (1..=m).map(totient).sum();
            prop_assert_eq!(farey_seq(m).unwrap().len() as i64, expect);
        }

        #[test]
        fn strictly_increasing_and_complete(m in 1i64..25) {
            let f = farey_seq(m).unwrap();
            prop_assert!(f.elems.windows(2).all(|w| w[0] < w[1]));
            for r in 1..=m {
                for s in 1..=r {
                    prop_assert!(f.elems.binary_search(&fr(s, r)).is_ok());
                }
            }
        }

        #[test]
        fn buckets_partition(pi in 1usize..12, m0 in 1i64..40) {
            let p = crate::repspec::primes_up_to(60)[pi];
            let m = 1 + m0 % (p - 1);
            let f = farey_seq(m).unwrap();
            let b = farey_buckets(&f, p);
            let mut all: Vec<Fraction> = b.iter().flatten().cloned().collect();
            all.sort();
            prop_assert_eq!(&all, &f.elems);
            for j in 0..p {
                let lo = fr(j, p);
                let hi = fr(j + 1, p);
                for y in &b[j as usize] {
                    prop_assert!(*y > lo && *y < hi);
                }
            }
            if let Ok((a, bb)) = block_sequences(&f, p) {
                let n = a.len();
                prop_assert!(a[0] >= 1 && 2 * a[0] < p);
                prop_assert_eq!(bb[n - 1], p - a[0] - 1);
                for k in 0..n {
                    prop_assert_eq!(bb[n - 1 - k], p - a[k] - 1);
                    prop_assert!(a[k] <= bb[k]);
                    if k + 1 < n {
                        prop_assert!(bb[k] + 1 < a[k + 1]);
                    }
                }
            } else {
                prop_assert_eq!(m, 1);
            }
        }
    }
}
