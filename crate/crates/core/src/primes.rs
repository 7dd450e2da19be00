//! Canonical primes: primality, factorization into `iˢ·Πpᵅ`, the total
//! multiplicity `ν`, the (norm, imaginary part) well-order and the A/B/C
//! classification by norm mod 8.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::gaussian::{canonicalize, gcd, GaussianInt, UnitPower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PrimeClass {
    /// `N(p) ≡ 1 (mod 8)`
    A,
    /// `p = 1 + i`
    B,
    /// `N(p) ≡ 5 (mod 8)`
    C,
}

impl PrimeClass {
    pub fn as_char(self) -> char {
        match self {
            PrimeClass::A => 'A',
            PrimeClass::B => 'B',
            PrimeClass::C => 'C',
        }
    }
}

impl fmt::Display for PrimeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePower {
    pub p: GaussianInt,
    pub alpha: u32,
}

/// `z = iˢ · p₁^α₁ ⋯ p_k^α_k` with canonical primes in ascending well-order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalFactorization {
    pub s: UnitPower,
    pub factors: Vec<PrimePower>,
}

impl CanonicalFactorization {
    pub fn reconstruct(&self) -> GaussianInt {
        self.factors
            .iter()
            .fold(self.s.to_gaussian(), |acc, f| &acc * &f.p.pow(f.alpha))
    }

    pub fn nu(&self) -> u64 {
        self.factors.iter().map(|f| u64::from(f.alpha)).sum()
    }

    /// Each prime repeated by its multiplicity, in well-order.
    pub fn primes_with_multiplicity(&self) -> impl Iterator<Item = &GaussianInt> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(&f.p, f.alpha as usize))
    }
}

impl fmt::Display for CanonicalFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i^{}", self.s.exponent())?;
        for pp in &self.factors {
            write!(f, " * ({})^{}", pp.p, pp.alpha)?;
        }
        Ok(())
    }
}

/// Sort key of the well-order: norm first, then imaginary part.
pub fn well_order_key(p: &GaussianInt) -> (BigUint, BigInt) {
    (p.norm(), p.im.clone())
}

pub fn is_canonical_prime(z: &GaussianInt) -> bool {
    if !z.in_canonical_sector() {
        return false;
    }
    if arith::is_prime_big(&z.norm()) {
        return true;
    }
    // inert rational primes q ≡ 3 (mod 4); in the sector they sit on the positive real axis
    z.im.is_zero()
        && z.re
            .to_biguint()
            .is_some_and(|q| (&q % 4u32) == BigUint::from(3u32) && arith::is_prime_big(&q))
}

fn require_prime(p: &GaussianInt) -> Result<()> {
    if is_canonical_prime(p) {
        Ok(())
    } else {
        Err(Error::NotCanonicalPrime(p.clone()))
    }
}

pub fn compare_primes(p: &GaussianInt, q: &GaussianInt) -> Result<Ordering> {
    require_prime(p)?;
    require_prime(q)?;
    Ok(well_order_key(p).cmp(&well_order_key(q)))
}

pub fn classify(p: &GaussianInt) -> Result<PrimeClass> {
    require_prime(p)?;
    let residue = (p.norm() % 8u32).to_u32().expect("residue < 8");
    Ok(match residue {
        1 => PrimeClass::A,
        2 => PrimeClass::B,
        5 => PrimeClass::C,
        other => unreachable!("canonical prime with norm ≡ {other} (mod 8)"),
    })
}

/// The two canonical primes above a rational prime `q ≡ 1 (mod 4)`, in well-order.
fn split_primes_above(q: u64) -> [GaussianInt; 2] {
    let r = arith::sqrt_minus_one(q);
    let pi = gcd(&GaussianInt::from(q as i64), &GaussianInt::new(r, 1)).expect("nonzero");
    let pi_bar = canonicalize(&pi.conj()).expect("nonzero").1;
    let mut pair = [pi, pi_bar];
    pair.sort_by_key(well_order_key);
    pair
}

pub fn factorize(z: &GaussianInt) -> Result<CanonicalFactorization> {
    if z.is_zero() {
        return Err(Error::ZeroInput("factorize"));
    }
    let n = z.norm().to_u64().ok_or_else(|| Error::NormTooLarge(z.clone()))?;
    let mut rest = z.clone();
    let mut factors = Vec::new();

    let mut strip = |rest: &mut GaussianInt, p: GaussianInt| {
        let mut alpha = 0;
        while let Some(q) = rest.exact_div(&p) {
            *rest = q;
            alpha += 1;
        }
        if alpha > 0 {
            factors.push(PrimePower { p, alpha });
        }
    };

    for (q, _) in arith::factor_u64(n) {
        match q % 4 {
            2 => strip(&mut rest, GaussianInt::new(1, 1)),
            3 => strip(&mut rest, GaussianInt::from(q as i64)),
            _ => {
                for p in split_primes_above(q) {
                    strip(&mut rest, p);
                }
            }
        }
    }
    let s = rest
        .unit_power()
        .expect("cofactor after stripping every prime above N(z) is a unit");
    factors.sort_by_key(|pp| well_order_key(&pp.p));
    Ok(CanonicalFactorization { s, factors })
}

pub fn nu(z: &GaussianInt) -> Result<u64> {
    factorize(z).map(|f| f.nu())
}

/// Every canonical prime of norm `≤ norm_bound`, in well-order.
pub fn primes_up_to(norm_bound: u64) -> Vec<GaussianInt> {
    let mut out = Vec::new();
    for q in arith::sieve(norm_bound) {
        match q % 4 {
            2 => out.push(GaussianInt::new(1, 1)),
            1 => out.extend(split_primes_above(q)),
            _ => {
                if q.checked_mul(q).is_some_and(|sq| sq <= norm_bound) {
                    out.push(GaussianInt::from(q as i64));
                }
            }
        }
    }
    out.sort_by_key(well_order_key);
    out
}

/// True iff `z` is a unit; `ν(z) = 0` characterizes these.
pub fn is_unit(z: &GaussianInt) -> bool {
    z.norm().is_one()
}
