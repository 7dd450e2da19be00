//! Exact Gaussian-integer arithmetic and constructive witnesses showing that
//! `x² + i·y² + z² + i·w²` represents every element of `Z[i]`.
//!
//! The pipeline: factor a target into canonical primes, represent each prime
//! (by descent on `x² + i·y²`, or by a two-square construction), then fold the
//! prime witnesses together with a bilinear composition identity and absorb
//! the leftover unit.

pub mod arith;
pub mod binary;
pub mod error;
pub mod gaussian;
pub mod oracle;
pub mod primes;
pub mod quaternary;
pub mod ramanujan;
pub mod report;

pub use error::{Error, Result};
pub use gaussian::{canonicalize, divmod_centered, gcd, mod_pow, norm, parse_gaussian, GaussianInt, UnitPower};
pub use primes::{
    classify, compare_primes, factorize, is_canonical_prime, nu, primes_up_to, CanonicalFactorization, PrimeClass,
};
