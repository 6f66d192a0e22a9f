//! Strata of the partial resolution: their cyclic quotient types, classes
//! in the Grothendieck ring, local invariants via the lattice-point formula,
//! and the discrepancy-based MMP classification.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::arithfns::{frac_prime, theta};
use crate::error::{Error, Result};
use crate::exactnum::{Fraction, LaurentPoly, RatFunc};
use crate::repspec::{Index, RepSpec};

/// Type `1/n (w_1, ..., w_t)` with boundary coefficients `a_i < 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuotientType {
    n: i64,
    weights: Vec<i64>,
    coeffs: Vec<Fraction>,
}

impl CyclicQuotientType {
    /// Weights are reduced to representatives in `[0, n)`.
    pub fn new(n: i64, weights: Vec<i64>, coeffs: Vec<Fraction>) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidOrder(n));
        }
        if weights.is_empty() || weights.len() != coeffs.len() {
            return Err(Error::PreconditionViolated(format!(
                "{} weights and {} coefficients; need equal nonzero counts",
                weights.len(),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|a| **a >= Fraction::one()) {
            return Err(Error::InvalidCoeff(bad.to_string()));
        }
        let weights = weights.into_iter().map(|w| w.mod_floor(&n)).collect();
        Ok(CyclicQuotientType { n, weights, coeffs })
    }

    /// All boundary coefficients zero.
    pub fn without_boundary(n: i64, weights: Vec<i64>) -> Result<Self> {
        let t = weights.len();
        CyclicQuotientType::new(n, weights, vec![Fraction::zero(); t])
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn coeffs(&self) -> &[Fraction] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// `(weight, coefficient)` pairs sorted, forgetting coordinate order.
    pub fn signature(&self) -> Vec<(i64, Fraction)> {
        let mut v: Vec<(i64, Fraction)> =
            self.weights.iter().copied().zip(self.coeffs.iter().cloned()).collect();
        v.sort();
        v
    }
}

/// A nonempty `S ⊆ I*` with a distinguished element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumSpec {
    subset: Vec<Index>,
    anchor: Index,
    g: i64,
}

impl StratumSpec {
    pub fn new(s: &RepSpec, subset: Vec<Index>, anchor: Index) -> Result<Self> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let parts = s.parts();
        for &(lam, i) in &subset {
            if lam == 0 || lam > parts.len() || i < 1 || i > parts[lam - 1] {
                return Err(Error::InvalidIndex(lam, i));
            }
        }
        let subset: Vec<Index> = subset.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if !subset.contains(&anchor) {
            return Err(Error::AnchorNotInSubset);
        }
        let g = subset.iter().fold(0, |acc, &(_, i)| acc.gcd(&i));
        Ok(StratumSpec { subset, anchor, g })
    }

    /// Uses the first element as anchor.
    pub fn with_first_anchor(s: &RepSpec, subset: Vec<Index>) -> Result<Self> {
        let anchor = *subset.iter().min().ok_or(Error::EmptySubset)?;
        StratumSpec::new(s, subset, anchor)
    }

    pub fn subset(&self) -> &[Index] {
        &self.subset
    }

    pub fn anchor(&self) -> Index {
        self.anchor
    }

    pub fn g(&self) -> i64 {
        self.g
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumType {
    Regular,
    Cyclic(CyclicQuotientType),
}

/// The weights `v` over the full index set for anchor `(sigma, i)`:
/// `p` at `(sigma, i-1)`, `1` at `(sigma, i)`, `-j` elsewhere.
fn anchor_weights(s: &RepSpec, anchor: Index) -> Vec<i64> {
    let (sigma, i) = anchor;
    s.full_index_set()
        .into_iter()
        .map(|(pi, j)| {
            if pi == sigma && j == i - 1 {
                s.p()
            } else if pi == sigma && j == i {
                1
            } else {
                -j
            }
        })
        .collect()
}

/// Boundary coefficient `-gamma` at the anchor, `0` elsewhere.
fn anchor_coeffs(s: &RepSpec, anchor: Index) -> Vec<Fraction> {
    s.full_index_set()
        .into_iter()
        .map(|ix| if ix == anchor { Fraction::from_int(-s.gamma()) } else { Fraction::zero() })
        .collect()
}

pub fn stratum_type(s: &RepSpec, st: &StratumSpec) -> Result<StratumType> {
    if st.g == 1 {
        return Ok(StratumType::Regular);
    }
    let ct = CyclicQuotientType::new(
        st.g,
        anchor_weights(s, st.anchor),
        anchor_coeffs(s, st.anchor),
    )?;
    Ok(StratumType::Cyclic(ct))
}

/// `[Q_S] = L^l (L - 1)^(|S| - 1)`.
pub fn stratum_class(s: &RepSpec, st: &StratumSpec) -> Result<LaurentPoly> {
    let k = st.subset.len();
    if k == 0 {
        return Err(Error::EmptySubset);
    }
    let l_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    Ok(l_minus_one.pow(k as u32 - 1).shift(s.l()))
}

/// `(L - 1)^t prod_i 1 / (1 - L^(a_i - 1)) sum_{pt} L^(-phi(pt))` over the
/// lattice points `({k w_1 / n}', ..., {k w_t / n}')`, `k = 0..n-1`.
pub fn batyrev_local(ct: &CyclicQuotientType) -> Result<RatFunc> {
    let t = ct.dim();
    let mut exps = Vec::with_capacity(t);
    for a in &ct.coeffs {
        let e = a - &Fraction::one();
        match e.to_integer() {
            Some(v) => exps.push(i64::try_from(v).map_err(|_| Error::NonIntegerExponent(e.to_string()))?),
            None => return Err(Error::NonIntegerExponent(e.to_string())),
        }
    }
    let n = ct.n;
    let points: BTreeSet<Vec<Fraction>> = (0..n)
        .map(|k| {
            ct.weights
                .iter()
                .map(|&w| frac_prime(&Fraction::new(k * w, n).expect("n >= 1")))
                .collect()
        })
        .collect();
    let one = Fraction::one();
    let mut phis = Vec::with_capacity(points.len());
    for pt in &points {
        let phi = pt
            .iter()
            .zip(&ct.coeffs)
            .fold(Fraction::zero(), |acc, (x, a)| &acc + &(&(&one - a) * x));
        let phi = phi
            .to_integer()
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| Error::NonIntegerExponent(phi.to_string()))?;
        phis.push(-phi);
    }
    let l_minus_one = LaurentPoly::from_terms([(1, 1), (0, -1)]);
    let num = &l_minus_one.pow(t as u32) * &LaurentPoly::sum_of_powers(phis);
    let den = exps
        .iter()
        .fold(LaurentPoly::one(), |acc, &e| &acc * &(LaurentPoly::one() - LaurentPoly::l_pow(e)));
    RatFunc::new(num, den)
}

/// `(L-1)^d (1/(1-L^-1))^(d-1) L^-d / (1 - L^(p-1-D)) sum_{y in (1/g)Z ∩ (0,1]} L^(theta(y))`.
pub fn local_mst_closed(s: &RepSpec, g: i64) -> Result<RatFunc> {
    if s.bold_d() < s.p() {
        return Err(Error::NotKlt { bold_d: s.bold_d(), p: s.p() });
    }
    if g < 2 {
        return Err(Error::TrivialGcd);
    }
    let d = s.dim();
    let one = RatFunc::one();
    let l_minus_one = RatFunc::from_poly(LaurentPoly::from_terms([(1, 1), (0, -1)]));
    let inv_geo = (&one - &RatFunc::l_pow(-1)).recip()?;
    let pole = (&one - &RatFunc::l_pow(s.p() - 1 - s.bold_d())).recip()?;
    let mut thetas = Vec::with_capacity(g as usize);
    for k in 1..=g {
        thetas.push(theta(s, &Fraction::new(k, g)?)?);
    }
    let sum = RatFunc::from_poly(LaurentPoly::sum_of_powers(thetas));
    let out = &l_minus_one.pow(d as u32) * &inv_geo.pow(d as u32 - 1);
    let out = &out * &RatFunc::l_pow(-d);
    Ok(&(&out * &pole) * &sum)
}

/// Local invariant at a point of the stratum: the lattice-point formula on
/// its type, with the smooth type `1/1` and boundary `-gamma` at the anchor
/// when the stratum is regular.
pub fn stratum_local_mst(s: &RepSpec, st: &StratumSpec) -> Result<RatFunc> {
    let ct = match stratum_type(s, st)? {
        StratumType::Cyclic(ct) => ct,
        StratumType::Regular => {
            CyclicQuotientType::new(1, anchor_weights(s, st.anchor), anchor_coeffs(s, st.anchor))?
        }
    };
    batyrev_local(&ct)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancies {
    /// `a(E; A^d) = D - 1`
    pub a_e_upstairs: i64,
    /// `a(E~; X) = D - p`
    pub a_e_quotient: i64,
}

pub fn discrepancies(s: &RepSpec) -> Result<Discrepancies> {
    let bold_d = s.bold_d();
    if bold_d <= 1 {
        return Err(Error::BelowStandingAssumption(bold_d));
    }
    Ok(Discrepancies { a_e_upstairs: bold_d - 1, a_e_quotient: bold_d - s.p() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MmpClass {
    Regular,
    NotLc,
    LcNotCanonical,
    CanonicalNotTerminal,
    Terminal,
}

impl MmpClass {
    pub fn name(self) -> &'static str {
        match self {
            MmpClass::Regular => "regular",
            MmpClass::NotLc => "not_lc",
            MmpClass::LcNotCanonical => "lc_not_canonical",
            MmpClass::CanonicalNotTerminal => "canonical_not_terminal",
            MmpClass::Terminal => "terminal",
        }
    }
}

impl std::fmt::Display for MmpClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// lc iff `D >= p - 1`, canonical iff `D >= p`, terminal iff `D >= p + 1`;
/// regular when `D <= 1`.
pub fn classify_mmp(s: &RepSpec) -> MmpClass {
    let (bold_d, p) = (s.bold_d(), s.p());
    if bold_d <= 1 {
        MmpClass::Regular
    } else if bold_d < p - 1 {
        MmpClass::NotLc
    } else if bold_d == p - 1 {
        MmpClass::LcNotCanonical
    } else if bold_d == p {
        MmpClass::CanonicalNotTerminal
    } else {
        MmpClass::Terminal
    }
}

/// Every nonempty subset of `I*` with its smallest element as anchor.
pub fn all_strata(s: &RepSpec) -> Vec<StratumSpec> {
    let idx = s.index_set();
    let k = idx.len();
    assert!(k < 31, "too many subsets to enumerate");
    (1u32..1 << k)
        .map(|mask| {
            let sub: Vec<Index> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| idx[b]).collect();
            StratumSpec::with_first_anchor(s, sub).expect("subset of I*")
        })
        .collect()
}
