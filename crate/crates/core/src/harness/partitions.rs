//! The block vectors swept by the batch runner.

/// `D` of a vector of block sizes: `sum d+ (d+ - 1) / 2`.
pub fn bold_d_plus(plus: &[i64]) -> i64 {
    plus.iter().map(|d| d * (d - 1) / 2).sum()
}

/// Partitions of `total` into parts in `[2, p]`, non-increasing, kept when
/// `D >= p`. Ordered with the largest leading part first.
pub fn valid_partitions(p: i64, total: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if total >= 2 {
        let mut cur = Vec::new();
        descend(total, p.min(total), &mut cur, &mut out);
    }
    out.retain(|part| bold_d_plus(part) >= p);
    out
}

fn descend(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for part in (2..=max.min(rest)).rev() {
        cur.push(part);
        descend(rest - part, part, cur, out);
        cur.pop();
    }
}

/// Single blocks `(d+)` with `3 <= d+ <= p` and `D >= p`.
pub fn indecomposable_blocks(p: i64) -> Vec<Vec<i64>> {
    (3..=p).filter(|&d| bold_d_plus(&[d]) >= p).map(|d| vec![d]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts partitions by choosing a multiplicity for each allowed part.
    fn count_oracle(p: i64, total: i64) -> usize {
        fn go(size: i64, p: i64, rest: i64, bold: i64, need: i64) -> usize {
            if size > p {
                return usize::from(rest == 0 && bold >= need);
            }
            let mut n = 0;
            let mut k = 0;
            while k * size <= rest {
                n += go(size + 1, p, rest - k * size, bold + k * size * (size - 1) / 2, need);
                k += 1;
            }
            n
        }
        if total < 2 {
            return 0;
        }
        go(2, p, total, 0, p)
    }

    #[test]
    fn example_p7_total7() {
        let v = valid_partitions(7, 7);
        assert_eq!(v, vec![vec![7], vec![5, 2], vec![4, 3]]);
        assert!(!v.contains(&vec![3, 2, 2]));
        assert_eq!(bold_d_plus(&[3, 2, 2]), 5);
        assert!(valid_partitions(7, 6).contains(&vec![6]));
    }

    #[test]
    fn small_totals() {
        assert!(valid_partitions(5, 1).is_empty());
        assert!(valid_partitions(5, 0).is_empty());
        assert!(valid_partitions(2, 2).is_empty());
        assert_eq!(valid_partitions(2, 4), vec![vec![2, 2]]);
    }

    #[test]
    fn matches_oracle() {
        for p in [2, 3, 5, 7, 11, 13] {
            for total in 0..=12 {
                let v = valid_partitions(p, total);
                assert_eq!(v.len(), count_oracle(p, total), "p={p} total={total}");
                for part in &v {
                    assert!(part.windows(2).all(|w| w[0] >= w[1]));
                    assert!(part.iter().all(|&x| (2..=p).contains(&x)));
                    assert_eq!(part.iter().sum::<i64>(), total);
                }
            }
        }
    }

    #[test]
    fn indecomposables() {
        assert_eq!(indecomposable_blocks(7), vec![vec![5], vec![6], vec![7]]);
        assert!(indecomposable_blocks(2).is_empty());
    }
}
