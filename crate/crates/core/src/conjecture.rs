//! The multisets `L` and `R` whose equality is equivalent to the equality of
//! the two stringy invariants, and an executable trace of the proof that
//! they agree.

use serde::{Serialize, Serializer};

use crate::arithfns::{sht, theta_ratio};
use crate::error::{Error, Result};
use crate::exactnum::{Fraction, IntMultiset, MultisetDiff};
use crate::farey::{block_sequences, farey_buckets, farey_seq, FareySeq};
use crate::repspec::RepSpec;

/// Closed integer interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        Interval { lo, hi }
    }

    pub fn to_multiset(self) -> IntMultiset {
        IntMultiset::interval(self.lo, self.hi)
    }
}

/// Run structure of the nonempty Farey buckets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Blocks {
    /// Every part is at most 1, so `F = {1}`.
    Trivial,
    Runs { a: Vec<i64>, b: Vec<i64> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub spec: RepSpec,
    pub lhs: IntMultiset,
    pub rhs: IntMultiset,
    pub equal: bool,
    #[serde(serialize_with = "diff_as_pairs")]
    pub diff: MultisetDiff,
    pub blocks: Blocks,
}

fn diff_as_pairs<S: Serializer>(d: &MultisetDiff, s: S) -> std::result::Result<S::Ok, S::Error> {
    d.iter().map(|(&v, &m)| (v, m)).collect::<Vec<_>>().serialize(s)
}

fn require_gamma(s: &RepSpec) -> Result<()> {
    if s.gamma() < 0 {
        return Err(Error::GammaNegative(s.gamma()));
    }
    Ok(())
}

fn farey_of(s: &RepSpec) -> FareySeq {
    farey_seq(s.max_part().max(1)).expect("order is positive")
}

/// `{{ j - sht(j) : 1 <= j < p }} ⊎ [-gamma, 0]`.
pub fn lhs_multiset(s: &RepSpec) -> Result<IntMultiset> {
    require_gamma(s)?;
    let mut m: IntMultiset = (1..s.p()).map(|j| j - sht(s, j)).collect();
    m.extend_from(&IntMultiset::interval(-s.gamma(), 0));
    Ok(m)
}

/// `{{ theta(s/r) + i : s/r in F, 0 <= i < N_r }}`.
pub fn rhs_multiset(s: &RepSpec) -> Result<IntMultiset> {
    require_gamma(s)?;
    let mut m = IntMultiset::new();
    for (num, den) in farey_of(s).pairs() {
        let t = theta_ratio(s, num, den);
        m.extend_from(&IntMultiset::interval(t, t + s.n_r(den) - 1));
    }
    Ok(m)
}

pub fn verify_conjecture(s: &RepSpec) -> Result<ConjectureReport> {
    let lhs = lhs_multiset(s)?;
    let rhs = rhs_multiset(s)?;
    let diff = lhs.diff(&rhs);
    let blocks = match block_sequences(&farey_of(s), s.p()) {
        Ok((a, b)) => Blocks::Runs { a, b },
        Err(_) => Blocks::Trivial,
    };
    Ok(ConjectureReport { spec: s.clone(), equal: diff.is_empty(), lhs, rhs, diff, blocks })
}

/// `R_j` as an interval. For `j < p` both descriptions
/// `[theta(y_last), theta(y_first) + N_{r_first} - 1]` and
/// `[j + 1 - sht(j + 1), j - sht(j)]` are computed and must agree;
/// `j = p` is the bucket `{1}`.
pub fn rhs_bucket_interval(s: &RepSpec, j: i64) -> Result<Interval> {
    require_gamma(s)?;
    let p = s.p();
    if j == p {
        return Ok(Interval::new(-s.gamma(), -s.gamma() + s.n_r(1) - 1));
    }
    if !(0..p).contains(&j) {
        return Err(Error::EmptyBucket(j));
    }
    let buckets = farey_buckets(&farey_of(s), p);
    let bucket = &buckets[j as usize];
    let (first, last) = match (bucket.first(), bucket.last()) {
        (Some(f), Some(l)) => (parts(f), parts(l)),
        _ => return Err(Error::EmptyBucket(j)),
    };
    let by_theta = Interval::new(
        theta_ratio(s, last.0, last.1),
        theta_ratio(s, first.0, first.1) + s.n_r(first.1) - 1,
    );
    let by_sht = Interval::new(j + 1 - sht(s, j + 1), j - sht(s, j));
    if by_theta != by_sht {
        return Err(Error::Inconsistent(format!(
            "bucket {j}: theta form {by_theta:?} differs from sht form {by_sht:?}"
        )));
    }
    Ok(by_sht)
}

fn parts(y: &Fraction) -> (i64, i64) {
    y.to_i64_parts().expect("Farey elements fit in i64")
}

/// Whether `⊎ [B_m, A_m] = ⊎ [B_m, A_{m+1}]`, indices cyclic (`A_{N+1} = A_0`).
pub fn interval_union_identity(a: &[i64], b: &[i64]) -> Result<bool> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "need equally many A and B values, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    let n = a.len();
    let mut left = IntMultiset::new();
    let mut right = IntMultiset::new();
    for m in 0..n {
        let next = a[(m + 1) % n];
        if b[m] > a[m].min(next) {
            return Err(Error::PreconditionViolated(format!(
                "B_{m} = {} exceeds min(A_{m}, A_{}) = {}",
                b[m],
                m + 1,
                a[m].min(next)
            )));
        }
        left.extend_from(&IntMultiset::interval(b[m], a[m]));
        right.extend_from(&IntMultiset::interval(b[m], next));
    }
    Ok(left == right)
}

/// One named assertion of the proof trace.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AppendixTrace {
    pub spec: RepSpec,
    pub blocks: Blocks,
    pub checks: Vec<Check>,
}

impl AppendixTrace {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check { name, ok, detail: if ok { String::new() } else { detail.into() } });
    }
}

/// Runs every step of the equality proof on one instance and records each
/// intermediate claim as a [`Check`].
pub fn appendix_trace(s: &RepSpec) -> Result<AppendixTrace> {
    let lhs = lhs_multiset(s)?;
    let rhs = rhs_multiset(s)?;
    let p = s.p();
    let gamma = s.gamma();
    let n1 = s.n_r(1);
    let f = farey_of(s);
    let mut tr = AppendixTrace { spec: s.clone(), blocks: Blocks::Trivial, checks: Vec::new() };

    tr.push(
        "cardinality",
        lhs.len() == (p + gamma) as u64 && rhs.len() == (p + gamma) as u64,
        format!("|L| = {}, |R| = {}, p + gamma = {}", lhs.len(), rhs.len(), p + gamma),
    );

    let (a_seq, b_seq) = match block_sequences(&f, p) {
        Ok(ab) => ab,
        Err(Error::TrivialCase) => {
            let expect = IntMultiset::interval(-gamma, p - 1);
            tr.push("trivial_lhs", lhs == expect, format!("L = {lhs}"));
            tr.push("trivial_rhs", rhs == expect, format!("R = {rhs}"));
            tr.push("lhs_eq_rhs", lhs == rhs, format!("diff {:?}", lhs.diff(&rhs)));
            return Ok(tr);
        }
        Err(e) => return Err(e),
    };
    tr.blocks = Blocks::Runs { a: a_seq.clone(), b: b_seq.clone() };
    let n = a_seq.len() - 1;
    let a = a_seq[0];
    let buckets = farey_buckets(&f, p);
    let sh: Vec<i64> = (0..=p).map(|j| sht(s, j)).collect();
    let delta = |j: i64| j - sh[j as usize];

    tr.push("a_bounds", a >= 1 && 2 * a < p, format!("a = {a}, p = {p}"));
    tr.push(
        "block_symmetry",
        (0..=n).all(|m| b_seq[n - m] == p - a_seq[m] - 1),
        format!("a = {a_seq:?}, b = {b_seq:?}"),
    );
    let reflect_ok = (1..p as usize).all(|j| {
        let mut r: Vec<Fraction> = buckets[j].iter().map(|y| &Fraction::one() - y).collect();
        r.sort();
        r == buckets[p as usize - 1 - j]
    });
    tr.push("bucket_reflection", reflect_ok, "1 - y does not map F^(j) onto F^(p-1-j)");

    // sht structure
    let bad: Vec<i64> =
        (1..p).filter(|&j| sh[(p - j) as usize] != s.bold_d() - n1 - sh[j as usize]).collect();
    tr.push("sht_reflection", bad.is_empty(), format!("fails at j = {bad:?}"));
    let border = (1..=a).all(|j| sh[j as usize] == 0)
        && (p - a..p).all(|j| sh[j as usize] == s.bold_d() - n1);
    tr.push("sht_border", border, format!("sht = {sh:?}"));
    let gaps = (0..n).all(|m| {
        let v = sh[(b_seq[m] + 1) as usize];
        (b_seq[m] + 1..=a_seq[m + 1]).all(|j| sh[j as usize] == v)
    });
    tr.push("sht_gap_constant", gaps, format!("sht = {sh:?}"));
    let mono = (0..=n).all(|m| (a_seq[m]..=b_seq[m]).all(|j| delta(j) >= delta(j + 1)));
    tr.push("sht_block_monotone", mono, format!("sht = {sh:?}"));

    // L rebuilt from block interiors, borders and gaps
    let mut interior = IntMultiset::new();
    for m in 0..=n {
        for j in a_seq[m] + 1..=b_seq[m] {
            interior.insert(delta(j));
        }
    }
    let mut l_rebuilt = interior.clone();
    l_rebuilt.extend_from(&IntMultiset::interval(-gamma - a + n1, -gamma + n1 - 1));
    l_rebuilt.extend_from(&IntMultiset::interval(-gamma, a));
    for m in 0..n {
        let c = sh[a_seq[m + 1] as usize];
        l_rebuilt.extend_from(&IntMultiset::interval(b_seq[m] + 1 - c, a_seq[m + 1] - c));
    }
    tr.push("lhs_decomposition", l_rebuilt == lhs, format!("diff {:?}", l_rebuilt.diff(&lhs)));

    // R bucket by bucket
    let mut steps_ok = true;
    let mut forms_ok = true;
    let mut detail = String::new();
    let mut r_rebuilt = IntMultiset::interval(-gamma, -gamma + n1 - 1);
    for j in 0..p {
        let bucket: Vec<(i64, i64)> = buckets[j as usize].iter().map(parts).collect();
        if bucket.is_empty() {
            continue;
        }
        let th: Vec<i64> = bucket.iter().map(|&(x, r)| theta_ratio(s, x, r)).collect();
        for k in 1..bucket.len() {
            if th[k] != th[k - 1] - s.n_r(bucket[k].1) {
                steps_ok = false;
                detail = format!("theta step fails in bucket {j} at position {k}");
            }
        }
        let mut actual = IntMultiset::new();
        for (&t, &(_, r)) in th.iter().zip(&bucket) {
            actual.extend_from(&IntMultiset::interval(t, t + s.n_r(r) - 1));
        }
        match rhs_bucket_interval(s, j) {
            Ok(iv) if iv.to_multiset() == actual => r_rebuilt.extend_from(&iv.to_multiset()),
            Ok(iv) => {
                forms_ok = false;
                detail = format!("bucket {j}: R_j = {actual}, interval {iv:?}");
            }
            Err(e) => {
                forms_ok = false;
                detail = e.to_string();
            }
        }
    }
    tr.push("theta_step", steps_ok, detail.clone());
    tr.push("bucket_interval_forms", forms_ok, detail);
    tr.push("rhs_reconstruction", r_rebuilt == rhs, format!("diff {:?}", r_rebuilt.diff(&rhs)));

    // the remaining interval identity
    let mut big_a: Vec<i64> = (0..=n).map(|m| delta(a_seq[m])).collect();
    let mut big_b: Vec<i64> = (0..=n).map(|m| delta(b_seq[m] + 1)).collect();
    big_a.push(-gamma + n1 - 1);
    big_b.push(-gamma);
    tr.push("final_a0", big_a[0] == a, format!("A_0 = {}, a = {a}", big_a[0]));
    tr.push(
        "final_bn",
        big_b[n] == -gamma - a + n1,
        format!("B_n = {}, expected {}", big_b[n], -gamma - a + n1),
    );
    let identity = interval_union_identity(&big_a, &big_b);
    tr.push(
        "interval_union",
        matches!(identity, Ok(true)),
        format!("A = {big_a:?}, B = {big_b:?}: {identity:?}"),
    );
    let len = big_a.len();
    let mut via_a = interior.clone();
    let mut via_next = interior;
    for m in 0..len {
        via_a.extend_from(&IntMultiset::interval(big_b[m], big_a[m]));
        via_next.extend_from(&IntMultiset::interval(big_b[m], big_a[(m + 1) % len]));
    }
    tr.push("final_matches_rhs", via_a == rhs, format!("diff {:?}", via_a.diff(&rhs)));
    tr.push("final_matches_lhs", via_next == lhs, format!("diff {:?}", via_next.diff(&lhs)));
    tr.push("lhs_eq_rhs", lhs == rhs, format!("diff {:?}", lhs.diff(&rhs)));
    Ok(tr)
}
