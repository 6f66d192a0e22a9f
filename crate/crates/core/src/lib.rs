//! Stringy motivic invariants of linear `alpha_p`- and `Z/p`-quotient
//! singularities, computed exactly as rational functions in `L`.
//!
//! The crate builds the two multisets whose equality is equivalent to the
//! equality of the invariants, checks that equality together with every
//! intermediate step of its proof, evaluates the closed forms and their
//! brute-force oracles, classifies the quotients' MMP singularities, and
//! runs batch sweeps over primes and block vectors.

pub mod error;
pub mod exactnum;
pub mod repspec;
pub mod farey;
pub mod arithfns;
pub mod conjecture;
pub mod stringy;
pub mod strata;
pub mod harness;

pub use error::{Error, Result};
