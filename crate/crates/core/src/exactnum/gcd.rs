//! Univariate polynomial gcd over the integers.
//!
//! Polynomials here are dense coefficient vectors, lowest degree first.
//! [`gcd_with_cofactors`] runs a multi-modular gcd whose candidate is
//! accepted only after exact trial division over `Z`, so its answer never
//! depends on the choice of primes. [`gcd_prs`] is the primitive
//! remainder sequence (Euclid over `Q` with denominators cleared) and
//! serves as the slow reference route and the fallback.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Removes trailing zero coefficients.
pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn degree(v: &[BigInt]) -> usize {
    v.len() - 1
}

pub(crate) fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Splits `v` into a positive content and a primitive part.
pub(crate) fn primitive_part(v: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return (c, v.to_vec());
    }
    (c.clone(), v.iter().map(|x| x / &c).collect())
}

/// Exact quotient `a / b` over `Z`, or `None` if `b` does not divide `a`.
pub(crate) fn div_exact_dense(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut b = b.to_vec();
    trim(&mut b);
    if b.is_empty() {
        return None;
    }
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let db = degree(&b);
    let lc = b[db].clone();
    let unit_lc = lc.abs().is_one();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let coef = if unit_lc {
            &r[i] * &lc
        } else {
            let (qq, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            qq
        };
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                r[i - db + k] -= &coef * bk;
            }
        }
        q[i - db] = coef;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(q)
}

fn normalize_sign(v: &mut [BigInt]) {
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
}

/// Pseudo-remainder of `a` by `b` (`lc(b)^k * a mod b`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = degree(b);
    let lc = &b[db];
    while r.len() > db {
        let dr = degree(&r);
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (k, bk) in b.iter().enumerate() {
            r[dr - db + k] -= &lead * bk;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two integer polynomials by the primitive remainder
/// sequence; positive leading coefficient, `[1]` when coprime.
pub fn gcd_prs(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    if x.is_empty() {
        let (_, mut p) = primitive_part(&y);
        normalize_sign(&mut p);
        return p;
    }
    if y.is_empty() {
        let (_, mut p) = primitive_part(&x);
        normalize_sign(&mut p);
        return p;
    }
    let (_, mut x) = primitive_part(&x);
    let (_, mut y) = primitive_part(&y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_empty() { r } else { primitive_part(&r).1 };
    }
    normalize_sign(&mut x);
    x
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    acc
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

const PRIME_POOL: usize = 256;

fn prime_pool() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_POOL {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(v: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    v.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect()
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_q`.
fn gcd_mod(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_mod(&mut x);
    trim_mod(&mut y);
    while !y.is_empty() {
        let dy = y.len() - 1;
        let inv = pow_mod(y[dy], q - 2, q);
        while x.len() > dy {
            let dx = x.len() - 1;
            let coef = mul_mod(x[dx], inv, q);
            if coef != 0 {
                for k in 0..=dy {
                    let t = mul_mod(coef, y[k], q);
                    let slot = &mut x[dx - dy + k];
                    *slot = if *slot >= t { *slot - t } else { *slot + q - t };
                }
            }
            debug_assert_eq!(x[dx], 0);
            x.pop();
            trim_mod(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lc) = x.last() {
        let inv = pow_mod(lc, q - 2, q);
        for c in x.iter_mut() {
            *c = mul_mod(*c, inv, q);
        }
    }
    x
}

fn symmetric(v: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let half: BigInt = modulus >> 1;
    v.iter()
        .map(|c| if c > &half { c - modulus } else { c.clone() })
        .collect()
}

/// Gcd of two non-zero primitive integer polynomials together with the
/// cofactors `a / g` and `b / g`. The gcd has a positive leading
/// coefficient.
pub fn gcd_with_cofactors(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(!a.is_empty() && !b.is_empty());
    if a.len() == 1 || b.len() == 1 {
        return (vec![BigInt::one()], a.to_vec(), b.to_vec());
    }
    if a == b {
        let mut g = a.to_vec();
        let sign = g.last().unwrap().signum();
        normalize_sign(&mut g);
        let unit = vec![sign];
        return (g, unit.clone(), unit);
    }
    let lc_a = a.last().unwrap();
    let lc_b = b.last().unwrap();
    let lc_gcd = lc_a.gcd(lc_b);

    let max_deg = degree(a).min(degree(b));
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_candidate: Option<Vec<BigInt>> = None;

    for &q in prime_pool() {
        let qb = BigInt::from(q);
        if (lc_a % &qb).is_zero() || (lc_b % &qb).is_zero() {
            continue;
        }
        let g = gcd_mod(&reduce(a, q), &reduce(b, q), q);
        let dg = g.len() - 1;
        if dg == 0 {
            return (vec![BigInt::one()], a.to_vec(), b.to_vec());
        }
        if dg > max_deg || dg > best_deg {
            continue;
        }
        let scale = lc_gcd.mod_floor(&qb).to_u64().unwrap();
        let image: Vec<u64> = g.iter().map(|&c| mul_mod(c, scale, q)).collect();
        if dg < best_deg {
            best_deg = dg;
            acc = image.iter().map(|&c| BigInt::from(c)).collect();
            modulus = qb;
            last_candidate = None;
            continue;
        }
        // Chinese remaindering of the new image into `acc`.
        let m_inv = pow_mod((&modulus % &qb).to_u64().unwrap(), q - 2, q);
        for (slot, &s) in acc.iter_mut().zip(&image) {
            let r = (&*slot % &qb).to_u64().unwrap();
            let t = mul_mod(if s >= r { s - r } else { s + q - r }, m_inv, q);
            if t != 0 {
                *slot += &modulus * t;
            }
        }
        modulus *= &qb;
        let (_, mut cand) = primitive_part(&symmetric(&acc, &modulus));
        normalize_sign(&mut cand);
        if last_candidate.as_ref() == Some(&cand) {
            if let (Some(qa), Some(qb)) = (div_exact_dense(a, &cand), div_exact_dense(b, &cand)) {
                return (cand, qa, qb);
            }
        }
        last_candidate = Some(cand);
    }

    let g = gcd_prs(a, b);
    let qa = div_exact_dense(a, &g).expect("gcd divides its arguments");
    let qb = div_exact_dense(b, &g).expect("gcd divides its arguments");
    (g, qa, qb)
}
