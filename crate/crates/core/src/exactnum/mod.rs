//! Exact arithmetic kernel: rationals, integer Laurent polynomials in `L`,
//! canonical rational functions, and integer multisets.
//!
//! Everything here is an immutable value type; operations are pure.

pub mod fraction;
pub mod gcd;
pub mod laurent;
pub mod multiset;
pub mod ratfunc;

pub use fraction::Fraction;
pub use laurent::{lp_arith, LaurentPoly, LpOp};
pub use multiset::{ms_ops, ms_to_poly, IntMultiset, MsOp, MsOutcome, MultisetDiff};
pub use ratfunc::{limit_at, rf_eq, rf_eval, rf_make, RatFunc};
