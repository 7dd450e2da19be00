//! The binary form `x² + i·y²`.
//!
//! For a canonical prime `p` with `N(p) ≡ 1 (mod 8)` (or `p = 1 + i`) this
//! module builds an exact representation `x² + i·y² = p`:
//!
//! 1. find `x₀` with `x₀² ≡ -i (mod p)`, giving `x₀² + i·1² = p·z₀`;
//! 2. reduce `x₀, y₀` modulo `p` so that `N(z₀) < N(p)`;
//! 3. repeatedly cancel a prime divisor `p′` of the cofactor using a known
//!    representation of `p′` (which precedes `p` in the well-order), until
//!    the cofactor is a unit;
//! 4. absorb the unit.
//!
//! Primes with `N(p) ≡ 5 (mod 8)` are not values of `x² + i·y²`; they are
//! instead written as `x² + y²` or `i(x² + y²)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{gcd, mod_pow, rem_centered, GaussianInt, UnitPower};
use crate::primes::{classify, factorize, well_order_key, PrimeClass};

/// `x² + i·y²`
pub fn binary_value(x: &GaussianInt, y: &GaussianInt) -> GaussianInt {
    x.square() + y.square().mul_i()
}

/// A coprime witness of `x² + i·y² = p·z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinarySolution {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub z: GaussianInt,
    pub p: GaussianInt,
}

impl BinarySolution {
    pub fn new(x: GaussianInt, y: GaussianInt, z: GaussianInt, p: GaussianInt) -> Result<Self> {
        let sol = BinarySolution { x, y, z, p };
        sol.check()?;
        Ok(sol)
    }

    pub fn check(&self) -> Result<()> {
        if binary_value(&self.x, &self.y) != &self.p * &self.z {
            return Err(Error::InvalidWitness(format!(
                "({})^2 + i({})^2 != ({})({})",
                self.x, self.y, self.p, self.z
            )));
        }
        if self.x.is_zero() && self.y.is_zero() || !gcd(&self.x, &self.y)?.is_one() {
            return Err(Error::InvalidWitness(format!(
                "{} and {} are not coprime",
                self.x, self.y
            )));
        }
        Ok(())
    }
}

/// `p = x² + y²` (untwisted) or `p = i(x² + y²)` (twisted).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCWitness {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub twisted: bool,
}

impl ClassCWitness {
    pub fn value(&self) -> GaussianInt {
        let sum = self.x.square() + self.y.square();
        if self.twisted {
            sum.mul_i()
        } else {
            sum
        }
    }
}

impl fmt::Display for ClassCWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.value();
        if self.twisted {
            write!(f, "{v} = i(({})^2 + ({})^2)", self.x, self.y)
        } else {
            write!(f, "{v} = ({})^2 + ({})^2", self.x, self.y)
        }
    }
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for GaussianInt {
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

fn congruent(a: &GaussianInt, b: &GaussianInt, m: &GaussianInt) -> bool {
    (a - b).is_divisible_by(m)
}

fn wrong_class(p: &GaussianInt, class: PrimeClass, expected: &'static str) -> Error {
    Error::WrongClass {
        prime: p.clone(),
        class: class.as_char(),
        expected,
    }
}

/// Whether `x² ≡ i (mod p)` is solvable, via Euler's criterion
/// `i^((N(p)-1)/2) ≡ 1`. For `p = 1 + i` every residue is a square.
pub fn i_is_quadratic_residue(p: &GaussianInt) -> Result<bool> {
    if classify(p)? == PrimeClass::B {
        return Ok(true);
    }
    let half = (p.norm() - 1u32) / 2u32;
    let power = mod_pow(&GaussianInt::i(), &half, p)?;
    Ok(congruent(&power, &GaussianInt::one(), p))
}

/// Smallest (in scan order) quadratic non-residue of the field `Z[i]/(p)`.
fn non_residue(p: &GaussianInt, half: &BigUint) -> GaussianInt {
    let minus_one = -GaussianInt::one();
    (1i64..)
        .flat_map(|a| (0..=a).map(move |b| GaussianInt::new(a, b)))
        .find(|c| {
            let e = mod_pow(c, half, p).expect("p nonzero");
            congruent(&e, &minus_one, p)
        })
        .expect("the multiplicative group of a finite field has non-squares")
}

/// A centered residue `r` with `r² ≡ i (mod p)`, by Tonelli–Shanks in the
/// field with `N(p)` elements.
pub fn sqrt_of_i_mod(p: &GaussianInt) -> Result<GaussianInt> {
    let class = classify(p)?;
    if class != PrimeClass::A {
        return Err(wrong_class(p, class, "A"));
    }
    let order = p.norm() - 1u32;
    let two_adic = order.trailing_zeros().expect("N(p) - 1 > 0");
    let odd = &order >> two_adic;
    let one = GaussianInt::one();
    let mul = |a: &GaussianInt, b: &GaussianInt| rem_centered(&(a * b), p);

    let c = non_residue(p, &(&order >> 1u32));
    let target = GaussianInt::i();
    let mut root = mod_pow(&target, &((&odd + 1u32) >> 1u32), p)?;
    let mut t = mod_pow(&target, &odd, p)?;
    let mut g = mod_pow(&c, &odd, p)?;
    let mut level = two_adic;

    while !congruent(&t, &one, p) {
        // least k with t^(2^k) ≡ 1
        let mut k = 0;
        let mut probe = t.clone();
        while !congruent(&probe, &one, p) {
            probe = mul(&probe, &probe)?;
            k += 1;
            if k == level {
                return Err(Error::ConstructionFailed(format!("i has no square root modulo {p}")));
            }
        }
        let mut b = g.clone();
        for _ in 0..(level - k - 1) {
            b = mul(&b, &b)?;
        }
        root = mul(&root, &b)?;
        g = mul(&b, &b)?;
        t = mul(&t, &g)?;
        level = k;
    }
    if !congruent(&root.square(), &target, p) {
        return Err(Error::ConstructionFailed(format!(
            "square root of i modulo {p} failed verification"
        )));
    }
    Ok(root)
}

/// A first coprime solution `x₀² + i·1² = p·z₀`.
pub fn initial_solution(p: &GaussianInt) -> Result<BinarySolution> {
    match classify(p)? {
        PrimeClass::B => BinarySolution::new(GaussianInt::one(), GaussianInt::one(), GaussianInt::one(), p.clone()),
        PrimeClass::C => Err(wrong_class(p, PrimeClass::C, "A or B")),
        PrimeClass::A => {
            // r² ≡ i  ⇒  (i·r)² ≡ -i, so x₀ = i·r solves x² + i ≡ 0
            let x = rem_centered(&sqrt_of_i_mod(p)?.mul_i(), p)?;
            let y = GaussianInt::one();
            let z = binary_value(&x, &y)
                .exact_div(p)
                .ok_or_else(|| Error::ConstructionFailed(format!("{p} does not divide ({x})^2 + i")))?;
            BinarySolution::new(x, y, z, p.clone())
        }
    }
}

/// Replace `x, y` by their centered residues mod `p`, strip their gcd, and
/// recompute the cofactor. The result has `N(z) < N(p)` for odd `p`; a
/// solution already within that bound is returned unchanged.
pub fn reduce_solution(sol: &BinarySolution) -> Result<BinarySolution> {
    sol.check()?;
    let p = &sol.p;
    if sol.z.norm() < p.norm() {
        return Ok(sol.clone());
    }
    let rx = rem_centered(&sol.x, p)?;
    let ry = rem_centered(&sol.y, p)?;
    if rx.is_zero() && ry.is_zero() {
        return Err(Error::Precondition(format!(
            "both coordinates are divisible by {p}; restart from a different root"
        )));
    }
    let d = gcd(&rx, &ry)?;
    let x = rx.exact_div(&d).expect("gcd divides");
    let y = ry.exact_div(&d).expect("gcd divides");
    let z = binary_value(&x, &y)
        .exact_div(p)
        .ok_or_else(|| Error::ConstructionFailed(format!("reduction of {sol:?} lost divisibility by {p}")))?;
    let reduced = BinarySolution::new(x, y, z, p.clone())?;
    if reduced.p.norm().is_odd() && reduced.z.norm() >= reduced.p.norm() {
        return Err(Error::ConstructionFailed(format!(
            "reduced cofactor {} not below N({p})",
            reduced.z
        )));
    }
    Ok(reduced)
}

/// Cancel one prime divisor `q` of the cofactor using `x′² + i·y′² = q`.
///
/// Multiplying `x² + i·y² = p·q·z′` by `q` and regrouping gives
/// `(x·x′ ∓ i·y·y′)² + i(x·y′ ± x′·y)² = p·q²·z′`; for one sign both terms are
/// divisible by `q`. Dividing by `q` and then by the gcd of the two
/// coordinates yields a coprime solution whose cofactor divides `z′`.
pub fn descent_step(
    sol: &BinarySolution,
    q: &GaussianInt,
    rep: (&GaussianInt, &GaussianInt),
) -> Result<BinarySolution> {
    sol.check()?;
    if sol.z.is_unit() {
        return Err(Error::Precondition(format!(
            "cofactor {} is a unit; nothing to cancel",
            sol.z
        )));
    }
    if !sol.z.is_divisible_by(q) {
        return Err(Error::Precondition(format!(
            "{q} does not divide the cofactor {}",
            sol.z
        )));
    }
    let (xq, yq) = rep;
    if binary_value(xq, yq) != *q {
        return Err(Error::InvalidWitness(format!("({xq})^2 + i({yq})^2 != {q}")));
    }
    let (x, y) = (&sol.x, &sol.y);
    let xx = x * xq;
    let iyy = (y * yq).mul_i();
    let xy = x * yq;
    let yx = xq * y;
    for (u, v) in [(&xx - &iyy, &xy + &yx), (&xx + &iyy, &xy - &yx)] {
        let (Some(u1), Some(v1)) = (u.exact_div(q), v.exact_div(q)) else {
            continue;
        };
        let d = gcd(&u1, &v1)?;
        let u2 = u1.exact_div(&d).expect("gcd divides");
        let v2 = v1.exact_div(&d).expect("gcd divides");
        let z = binary_value(&u2, &v2)
            .exact_div(&sol.p)
            .ok_or_else(|| Error::ConstructionFailed(format!("{} no longer divides the combined value", sol.p)))?;
        if !sol.z.is_divisible_by(&z) {
            return Err(Error::ConstructionFailed(format!(
                "new cofactor {z} does not divide {}",
                sol.z
            )));
        }
        return BinarySolution::new(u2, v2, z, sol.p.clone());
    }
    Err(Error::ConstructionFailed(format!(
        "{q} divides neither x·x′ - i·y·y′ nor x·x′ + i·y·y′ for {sol:?}"
    )))
}

/// `(x, y) ↦ (i·y, x)` applied `s` times, so the value is multiplied by `iˢ`.
pub fn absorb_unit_binary(x: &GaussianInt, y: &GaussianInt, s: UnitPower) -> (GaussianInt, GaussianInt) {
    let (mut x, mut y) = (x.clone(), y.clone());
    for _ in 0..s.exponent() {
        (x, y) = (y.mul_i(), x);
    }
    (x, y)
}

/// The full descent for one prime: every intermediate solution plus the
/// final witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentTrace {
    pub steps: Vec<BinarySolution>,
    pub x: GaussianInt,
    pub y: GaussianInt,
}

type Memo = RwLock<HashMap<GaussianInt, (GaussianInt, GaussianInt)>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Descent with every intermediate solution recorded. Divisors are
/// represented through the memoized [`descend`].
pub fn descend_traced(p: &GaussianInt) -> Result<DescentTrace> {
    let class = classify(p)?;
    if class == PrimeClass::C {
        return Err(wrong_class(p, class, "A or B"));
    }
    if class == PrimeClass::B {
        let one = GaussianInt::one();
        return Ok(DescentTrace {
            steps: vec![BinarySolution::new(one.clone(), one.clone(), one.clone(), p.clone())?],
            x: one.clone(),
            y: one,
        });
    }
    let mut sol = reduce_solution(&initial_solution(p)?)?;
    let mut steps = vec![sol.clone()];
    while !sol.z.is_unit() {
        let f = factorize(&sol.z)?;
        let q = &f.factors[0].p;
        let q_class = classify(q)?;
        if q_class == PrimeClass::C {
            return Err(Error::ConstructionFailed(format!(
                "class C prime {q} divides the cofactor of {p}, contradicting i being a residue mod {q}"
            )));
        }
        if well_order_key(q) >= well_order_key(p) {
            return Err(Error::ConstructionFailed(format!(
                "cofactor prime {q} does not precede {p}"
            )));
        }
        let (xq, yq) = descend(q)?;
        sol = descent_step(&sol, q, (&xq, &yq))?;
        steps.push(sol.clone());
    }
    let s = sol.z.unit_power().expect("unit cofactor");
    let (x, y) = absorb_unit_binary(&sol.x, &sol.y, s.inverse());
    if binary_value(&x, &y) != *p {
        return Err(Error::ConstructionFailed(format!(
            "descent for {p} produced ({x})^2 + i({y})^2"
        )));
    }
    Ok(DescentTrace { steps, x, y })
}

/// `x² + i·y² = p` for a class A or B canonical prime. Results are memoized
/// process-wide; the memo only ever holds the deterministic answer.
pub fn descend(p: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if let Some(hit) = memo().read().expect("memo lock").get(p) {
        return Ok(hit.clone());
    }
    let trace = descend_traced(p)?;
    let witness = (trace.x, trace.y);
    memo()
        .write()
        .expect("memo lock")
        .entry(p.clone())
        .or_insert_with(|| witness.clone());
    Ok(witness)
}

/// Whether `x² + y² = a + 2bi` is solvable: it fails exactly when
/// `a ≡ 2 (mod 4)` and `b` is odd.
pub fn niven_mordell_representable(a: &BigInt, b: &BigInt) -> bool {
    !(a.mod_floor(&BigInt::from(4)) == BigInt::from(2) && b.is_odd())
}

/// Write a class C prime as `x² + y²` or `i(x² + y²)`.
///
/// With `t = x² + y² = (x + iy)(x - iy)` and `t` prime, one factor is a unit
/// `u`, so `x = (u + u⁻¹t)/2` and `y = (u - u⁻¹t)/(2i)`. Try both targets
/// `t = p` and `t = -i·p` against all four units.
pub fn represent_class_c(p: &GaussianInt) -> Result<ClassCWitness> {
    let class = classify(p)?;
    if class != PrimeClass::C {
        return Err(wrong_class(p, class, "C"));
    }
    let two = GaussianInt::from(2);
    let two_i = GaussianInt::new(0, 2);
    for (t, twisted) in [(p.clone(), false), (-p.mul_i(), true)] {
        for s in 0..4 {
            let u = UnitPower::new(s);
            let co = &u.inverse().to_gaussian() * &t;
            let unit = u.to_gaussian();
            let (Some(x), Some(y)) = ((&unit + &co).exact_div(&two), (&unit - &co).exact_div(&two_i)) else {
                continue;
            };
            if x.square() + y.square() == t {
                return Ok(ClassCWitness { x, y, twisted });
            }
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no two-square witness found for class C prime {p}"
    )))
}
