//! Stringy motivic invariants of the `alpha_p`- and `Z/p`-quotients as
//! rational functions in `L`.
//!
//! Both closed forms share the denominator `1 - L^(-1-gamma)`; every builder
//! multiplies through by `L^(gamma+1)` and works with the pair
//! `(num, L^(gamma+1) - 1)` before canonicalizing.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::arithfns::{sht, theta_ratio};
use crate::conjecture::{lhs_multiset, rhs_multiset};
use crate::error::{Error, Result};
use crate::exactnum::{limit_at, rf_eq, rf_eval, Fraction, LaurentPoly, RatFunc};
use crate::farey::farey_seq;
use crate::repspec::RepSpec;

/// Largest `|I*|` the subset oracle enumerates by default.
pub const DEFAULT_SUBSET_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MstVariant {
    AlphaClosed,
    AlphaSubsets,
    ZpClosed,
}

impl MstVariant {
    pub const ALL: [MstVariant; 3] =
        [MstVariant::AlphaClosed, MstVariant::AlphaSubsets, MstVariant::ZpClosed];

    pub fn name(self) -> &'static str {
        match self {
            MstVariant::AlphaClosed => "alpha_closed",
            MstVariant::AlphaSubsets => "alpha_subsets",
            MstVariant::ZpClosed => "zp_closed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MstResult {
    pub value: RatFunc,
    pub spec: RepSpec,
    pub variant: MstVariant,
}

pub fn mst(s: &RepSpec, variant: MstVariant) -> Result<MstResult> {
    let value = match variant {
        MstVariant::AlphaClosed => mst_alpha(s)?,
        MstVariant::AlphaSubsets => mst_alpha_subsets(s)?,
        MstVariant::ZpClosed => mst_zp(s)?,
    };
    Ok(MstResult { value, spec: s.clone(), variant })
}

/// `None` when the invariant is defined and not trivially `L^d`.
fn special_case(s: &RepSpec) -> Result<Option<(LaurentPoly, LaurentPoly)>> {
    let bold_d = s.bold_d();
    if bold_d <= 1 {
        return Ok(Some((LaurentPoly::l_pow(s.dim()), LaurentPoly::one())));
    }
    if bold_d < s.p() {
        return Err(Error::NotKlt { bold_d, p: s.p() });
    }
    Ok(None)
}

/// `L^(gamma+1) - 1`.
fn cleared_den(s: &RepSpec) -> LaurentPoly {
    LaurentPoly::l_pow(s.gamma() + 1) - LaurentPoly::one()
}

/// `(L^d - L^l)(L^(gamma+1) - 1) + L^(l+gamma) * sum`, the numerator shape
/// shared by both expressions of the `alpha_p` invariant.
fn alpha_numerator(s: &RepSpec, sum: &LaurentPoly) -> LaurentPoly {
    let off = LaurentPoly::l_pow(s.dim()) - LaurentPoly::l_pow(s.l());
    &(&off * &cleared_den(s)) + &sum.shift(s.l() + s.gamma())
}

/// `sum_{y in F} (L^(N_r) - 1) L^(theta(y))`.
pub fn farey_sum(s: &RepSpec) -> LaurentPoly {
    let f = farey_seq(s.max_part().max(1)).expect("order is positive");
    let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
    for (num, den) in f.pairs() {
        let t = theta_ratio(s, num, den);
        *terms.entry(t + s.n_r(den)).or_insert(0) += 1;
        *terms.entry(t).or_insert(0) -= 1;
    }
    LaurentPoly::from_terms(terms)
}

/// Unreduced `(num, den)` of the Farey closed form.
pub fn mst_alpha_raw(s: &RepSpec) -> Result<(LaurentPoly, LaurentPoly)> {
    if let Some(pair) = special_case(s)? {
        return Ok(pair);
    }
    Ok((alpha_numerator(s, &farey_sum(s)), cleared_den(s)))
}

/// `L^d - L^l + L^(l-1) / (1 - L^(-1-gamma)) * sum_{y in F} (L^(N_r) - 1) L^(theta(y))`.
pub fn mst_alpha(s: &RepSpec) -> Result<RatFunc> {
    let (n, d) = mst_alpha_raw(s)?;
    RatFunc::new(n, d)
}

/// Unreduced `(num, den)` of the subset expansion, enumerating every
/// nonempty `S ⊆ I*` when `|I*| <= cap`.
pub fn mst_alpha_subsets_raw(s: &RepSpec, cap: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    if let Some(pair) = special_case(s)? {
        return Ok(pair);
    }
    let idx: Vec<i64> = s.index_set().into_iter().map(|(_, i)| i).collect();
    let k = idx.len();
    if k > cap {
        return Err(Error::SubsetCapExceeded { size: k, cap });
    }
    // gcd over every subset by lowest-bit recursion; tally by (|S|, g)
    let mut g = vec![0i64; 1 << k];
    let mut tally: BTreeMap<(u32, i64), u64> = BTreeMap::new();
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        g[mask] = g[mask & (mask - 1)].gcd(&idx[low]);
        *tally.entry((mask.count_ones(), g[mask])).or_insert(0) += 1;
    }
    let l_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let mut local_sums: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    let mut total = LaurentPoly::zero();
    for (&(size, gs), &count) in &tally {
        let local = local_sums
            .entry(gs)
            .or_insert_with(|| {
                LaurentPoly::sum_of_powers((1..=gs).map(|kk| theta_ratio(s, kk, gs)))
            })
            .clone();
        let term = &l_minus_one.pow(size) * &local;
        total = &total + &term.scale(&count.into());
    }
    Ok((alpha_numerator(s, &total), cleared_den(s)))
}

pub fn mst_alpha_subsets(s: &RepSpec) -> Result<RatFunc> {
    mst_alpha_subsets_capped(s, DEFAULT_SUBSET_CAP)
}

pub fn mst_alpha_subsets_capped(s: &RepSpec, cap: usize) -> Result<RatFunc> {
    let (n, d) = mst_alpha_subsets_raw(s, cap)?;
    RatFunc::new(n, d)
}

/// `sum_{j=1}^{p-1} L^(j - sht(j))`.
pub fn sht_sum(s: &RepSpec) -> LaurentPoly {
    LaurentPoly::sum_of_powers((1..s.p()).map(|j| j - sht(s, j)))
}

/// Unreduced `(num, den)` of the `Z/p` closed form.
pub fn mst_zp_raw(s: &RepSpec) -> Result<(LaurentPoly, LaurentPoly)> {
    if let Some(pair) = special_case(s)? {
        return Ok(pair);
    }
    let den = cleared_den(s);
    let l_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let tail = (&l_minus_one * &sht_sum(s)).shift(s.l() + s.gamma());
    let num = &(&LaurentPoly::l_pow(s.dim()) * &den) + &tail;
    Ok((num, den))
}

/// `L^d + L^(l-1) (L - 1) sum_j L^(j - sht(j)) / (1 - L^(p-1-D))`.
pub fn mst_zp(s: &RepSpec) -> Result<RatFunc> {
    let (n, d) = mst_zp_raw(s)?;
    RatFunc::new(n, d)
}

/// The two Laurent polynomials whose equality is equivalent to the equality
/// of the invariants: `sum_j L^(j - sht(j)) + (1 + L^-1 + ... + L^-gamma)`
/// and `sum_{y in F} (L^(N_r - 1) + ... + 1) L^(theta(y))`.
pub fn bridge_polys(s: &RepSpec) -> Result<(LaurentPoly, LaurentPoly)> {
    if s.gamma() < 0 {
        return Err(Error::GammaNegative(s.gamma()));
    }
    let left = &sht_sum(s) + &LaurentPoly::sum_of_powers(-s.gamma()..=0);
    let f = farey_seq(s.max_part().max(1)).expect("order is positive");
    let right = LaurentPoly::sum_of_powers(f.pairs().into_iter().flat_map(|(num, den)| {
        let t = theta_ratio(s, num, den);
        t..t + s.n_r(den)
    }));
    Ok((left, right))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MstComparison {
    pub mst_eq: bool,
    pub multiset_eq: bool,
    pub agree: bool,
}

/// Both sides of the equivalence between equal invariants and equal
/// multisets, evaluated independently.
pub fn compare_mst(s: &RepSpec) -> Result<MstComparison> {
    if s.gamma() < 0 {
        return Err(Error::GammaNegative(s.gamma()));
    }
    let mst_eq = rf_eq(&mst_alpha(s)?, &mst_zp(s)?);
    comparison_from(s, mst_eq)
}

pub(crate) fn comparison_from(s: &RepSpec, mst_eq: bool) -> Result<MstComparison> {
    let multiset_eq = lhs_multiset(s)? == rhs_multiset(s)?;
    Ok(MstComparison { mst_eq, multiset_eq, agree: mst_eq == multiset_eq })
}

/// `D / (gamma + 1)`.
pub fn euler_closed_form(s: &RepSpec) -> Result<Fraction> {
    if s.bold_d() < s.p() {
        return Err(Error::NotKlt { bold_d: s.bold_d(), p: s.p() });
    }
    Fraction::new(s.bold_d(), s.gamma() + 1)
}

/// Stringy Euler number, as the closed form cross-checked against the
/// value at `L = 1` of both reduced invariants.
pub fn stringy_euler(s: &RepSpec) -> Result<Fraction> {
    let closed = euler_closed_form(s)?;
    let (an, ad) = mst_alpha_raw(s)?;
    let (zn, zd) = mst_zp_raw(s)?;
    let alpha = RatFunc::new(an.clone(), ad.clone())?;
    let zp = RatFunc::new(zn, zd)?;
    euler_consistency(s, &closed, &alpha, &zp, (&an, &ad))?;
    Ok(closed)
}

/// Checks that every route to the Euler number gives `closed`.
pub(crate) fn euler_consistency(
    s: &RepSpec,
    closed: &Fraction,
    alpha: &RatFunc,
    zp: &RatFunc,
    raw: (&LaurentPoly, &LaurentPoly),
) -> Result<()> {
    let one = Fraction::one();
    let routes = [
        ("reduced alpha_p invariant", rf_eval(alpha, &one)?),
        ("reduced Z/p invariant", rf_eval(zp, &one)?),
        ("unreduced alpha_p pair", limit_at(raw.0, raw.1, &one)?),
    ];
    for (name, v) in routes {
        if v != *closed {
            return Err(Error::Inconsistent(format!(
                "Euler number of {s:?}: {name} gives {v}, closed form {closed}"
            )));
        }
    }
    Ok(())
}

/// `(full - L^d + L^l) L^-l`, the invariant restricted to the origin.
pub fn mst_at_origin(s: &RepSpec, full: &RatFunc) -> RatFunc {
    let off = RatFunc::from_poly(LaurentPoly::l_pow(s.dim()) - LaurentPoly::l_pow(s.l()));
    &(full - &off) * &RatFunc::l_pow(-s.l())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(p: i64, d: &[i64]) -> RepSpec {
        RepSpec::new(p, d.to_vec()).unwrap()
    }

    /// Term-by-term evaluation of the Farey formula with rational function
    /// arithmetic, independent of the cleared-denominator numerators above.
    fn alpha_literal(s: &RepSpec) -> RatFunc {
        let l = |e: i64| RatFunc::l_pow(e);
        let one = RatFunc::one();
        let geo = (&one - &l(-1 - s.gamma())).recip().unwrap();
        let f = farey_seq(s.max_part().max(1)).unwrap();
        let mut sum = RatFunc::zero();
        for y in &f.elems {
            let (num, den) = y.to_i64_parts().unwrap();
            let th = crate::arithfns::theta(s, y).unwrap();
            assert_eq!(th, theta_ratio(s, num, den));
            sum = &sum + &(&(&l(s.n_r(den)) - &one) * &l(th));
        }
        &(&l(s.dim()) - &l(s.l())) + &(&(&l(s.l() - 1) * &geo) * &sum)
    }

    #[test]
    fn golden_agreement() {
        let s = spec(7, &[5]);
        let a = mst_alpha(&s).unwrap();
        assert!(rf_eq(&a, &mst_zp(&s).unwrap()));
        assert!(rf_eq(&a, &mst_alpha_subsets(&s).unwrap()));
        assert!(rf_eq(&a, &alpha_literal(&s)));
        assert_eq!(stringy_euler(&s).unwrap(), Fraction::new(5, 3).unwrap());
        let c = compare_mst(&s).unwrap();
        assert!(c.mst_eq && c.multiset_eq && c.agree);
    }

    #[test]
    fn golden_zp_exponents() {
        let s = spec(7, &[5]);
        assert_eq!(sht_sum(&s), LaurentPoly::sum_of_powers((1..=6).map(|j| 2 - j)));
    }

    #[test]
    fn regular_and_not_klt() {
        let reg = spec(5, &[1, 0, 0]);
        assert_eq!(mst_alpha(&reg).unwrap(), RatFunc::l_pow(4));
        assert_eq!(mst_zp(&reg).unwrap(), RatFunc::l_pow(4));
        assert_eq!(mst_alpha_subsets(&reg).unwrap(), RatFunc::l_pow(4));
        let bad = spec(7, &[2, 1]);
        assert!(matches!(mst_alpha(&bad), Err(Error::NotKlt { bold_d: 4, p: 7 })));
        assert!(matches!(mst_zp(&bad), Err(Error::NotKlt { .. })));
        assert!(matches!(stringy_euler(&bad), Err(Error::NotKlt { .. })));
        // D = p - 1 is log canonical but the invariant is undefined
        assert!(matches!(mst_alpha(&spec(7, &[3])), Err(Error::NotKlt { .. })));
    }

    #[test]
    fn subset_cap() {
        let s = spec(11, &[5, 5, 5]);
        assert!(matches!(
            mst_alpha_subsets_capped(&s, 12),
            Err(Error::SubsetCapExceeded { size: 15, cap: 12 })
        ));
    }

    #[test]
    fn two_block_examples() {
        for (p, d) in [(7, vec![3, 2]), (5, vec![3, 1]), (5, vec![4]), (11, vec![4, 4])] {
            let s = spec(p, &d);
            let a = mst_alpha(&s).unwrap();
            assert!(rf_eq(&a, &mst_zp(&s).unwrap()), "{s:?}");
            assert!(rf_eq(&a, &mst_alpha_subsets(&s).unwrap()), "{s:?}");
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(stringy_euler(&spec(5, &[4])).unwrap(), Fraction::new(5, 3).unwrap());
        // D = p: gamma = 0 and the Euler number is p
        let crepant = spec(7, &[3, 1]);
        assert_eq!(crepant.gamma(), 0);
        assert_eq!(stringy_euler(&crepant).unwrap(), Fraction::from_int(7));
    }

    #[test]
    fn origin_restriction() {
        let s = spec(7, &[5]);
        let a = mst_at_origin(&s, &mst_alpha(&s).unwrap());
        let z = mst_at_origin(&s, &mst_zp(&s).unwrap());
        assert!(rf_eq(&a, &z));
        let q = spec(5, &[4]);
        assert!(rf_eq(
            &mst_at_origin(&q, &mst_alpha(&q).unwrap()),
            &mst_at_origin(&q, &mst_zp(&q).unwrap())
        ));
        // the regular value L^d restricts to 1
        let reg = spec(5, &[1, 0]);
        let full = mst_alpha(&reg).unwrap();
        assert_eq!(mst_at_origin(&reg, &full), RatFunc::one());
    }

    #[test]
    fn json_shape() {
        let r = mst(&spec(7, &[5]), MstVariant::ZpClosed).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["variant"], "zp_closed");
        assert!(v["value"]["num"].is_array() && v["value"]["den"].is_array());
    }

    fn klt_spec() -> impl Strategy<Value = RepSpec> {
        prop::sample::select(vec![3i64, 5, 7, 11, 13]).prop_flat_map(|p| {
            prop::collection::vec(0..p, 1..5)
                .prop_map(move |parts| RepSpec::new(p, parts).unwrap())
                .prop_filter("klt, within subset cap", |s| {
                    s.bold_d() >= s.p() && s.n_r(1) <= 12
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn three_way_equality(s in klt_spec()) {
            let a = mst_alpha(&s).unwrap();
            prop_assert!(rf_eq(&a, &mst_zp(&s).unwrap()));
            prop_assert!(rf_eq(&a, &mst_alpha_subsets(&s).unwrap()));
            prop_assert!(rf_eq(&a, &alpha_literal(&s)));
        }

        #[test]
        fn bridge_identity(s in klt_spec()) {
            let (l, r) = bridge_polys(&s).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn leading_term_is_l_to_the_d(s in klt_spec()) {
            let a = mst_alpha(&s).unwrap();
            prop_assert_eq!(a.leading_term(), Some((s.dim(), Fraction::one())));
        }

        #[test]
        fn euler_agrees(s in klt_spec()) {
            let e = stringy_euler(&s).unwrap();
            prop_assert_eq!(e, Fraction::new(s.bold_d(), s.gamma() + 1).unwrap());
        }
    }
}
