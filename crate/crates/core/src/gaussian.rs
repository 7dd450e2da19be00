//! Exact arithmetic in the Gaussian integers `Z[i]`.
//!
//! Every value is an exact pair of arbitrary-precision integers. There is no
//! floating point anywhere: the angular sector used for canonical associates
//! is decided with integer comparisons only.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `re + im·i` of `Z[i]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussianInt::default()
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussianInt::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.re.clone(), -&self.im)
    }

    /// `N(z) = re² + im²`.
    pub fn norm(&self) -> BigUint {
        (&self.re * &self.re + &self.im * &self.im)
            .to_biguint()
            .expect("sum of squares is nonnegative")
    }

    /// Multiplication by `i`: `(a + bi)·i = -b + ai`.
    pub fn mul_i(&self) -> Self {
        GaussianInt::new(-&self.im, self.re.clone())
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianInt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &GaussianInt) -> Option<GaussianInt> {
        if d.is_zero() {
            return None;
        }
        let n = BigInt::from(d.norm());
        let num = self * &d.conj();
        let (qr, rr) = num.re.div_rem(&n);
        let (qi, ri) = num.im.div_rem(&n);
        if rr.is_zero() && ri.is_zero() {
            Some(GaussianInt::new(qr, qi))
        } else {
            None
        }
    }

    pub fn is_divisible_by(&self, d: &GaussianInt) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.exact_div(d).is_some()
    }

    /// True when `re > 0` and `-re < im ≤ re`, i.e. the argument lies in
    /// `(-π/4, π/4]`.
    pub fn in_canonical_sector(&self) -> bool {
        self.re.is_positive() && -&self.re < self.im && self.im <= self.re
    }

    /// The unit power `s` with `self = iˢ`, if `self` is a unit.
    pub fn unit_power(&self) -> Option<UnitPower> {
        (0..4u8).map(UnitPower::new).find(|s| s.to_gaussian() == *self)
    }

    pub fn from_i64_pair(re: i64, im: i64) -> Self {
        GaussianInt::new(re, im)
    }

    /// Components as `i64`, when both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }
}

impl From<i64> for GaussianInt {
    fn from(v: i64) -> Self {
        GaussianInt::new(v, 0)
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussianInt::new(re, im)
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident, $body:expr) => {
        impl $imp<&GaussianInt> for &GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                let f: fn(&GaussianInt, &GaussianInt) -> GaussianInt = $body;
                f(self, rhs)
            }
        }
        impl $imp<GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&GaussianInt> for GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: &GaussianInt) -> GaussianInt {
                (&self).$method(rhs)
            }
        }
        impl $imp<GaussianInt> for &GaussianInt {
            type Output = GaussianInt;
            fn $method(self, rhs: GaussianInt) -> GaussianInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussianInt::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| GaussianInt::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| GaussianInt::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));

impl AddAssign<&GaussianInt> for GaussianInt {
    fn add_assign(&mut self, rhs: &GaussianInt) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussianInt> for GaussianInt {
    fn sub_assign(&mut self, rhs: &GaussianInt) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussianInt> for GaussianInt {
    fn mul_assign(&mut self, rhs: &GaussianInt) {
        *self = &*self * rhs;
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-&self.re, -&self.im)
    }
}

/// The unit `iˢ`, `s ∈ {0, 1, 2, 3}`. Composition is addition mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitPower(u8);

impl UnitPower {
    pub const ONE: UnitPower = UnitPower(0);

    pub fn new(s: u8) -> Self {
        UnitPower(s % 4)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        UnitPower::new(4 - self.0)
    }

    pub fn to_gaussian(self) -> GaussianInt {
        match self.0 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }
}

impl Add for UnitPower {
    type Output = UnitPower;
    fn add(self, rhs: UnitPower) -> UnitPower {
        UnitPower::new(self.0 + rhs.0)
    }
}

pub fn norm(z: &GaussianInt) -> BigUint {
    z.norm()
}

/// Split `z ≠ 0` as `iˢ·z′` with `z′` in the canonical sector.
pub fn canonicalize(z: &GaussianInt) -> Result<(UnitPower, GaussianInt)> {
    if z.is_zero() {
        return Err(Error::ZeroInput("canonicalize"));
    }
    // z′ = i^(-s)·z; rotating by -i each step walks s = 0, 1, 2, 3.
    let mut rotated = z.clone();
    for s in 0..4u8 {
        if rotated.in_canonical_sector() {
            return Ok((UnitPower::new(s), rotated));
        }
        rotated = -rotated.mul_i();
    }
    unreachable!("every nonzero Gaussian integer has an associate in the sector")
}

/// Nearest integer to `n/d` for `d > 0`, ties rounded toward the floor.
fn round_half_down(n: &BigInt, d: &BigInt) -> BigInt {
    // ceil((2n - d) / 2d) = -floor((d - 2n) / 2d)
    let two_d: BigInt = d * 2;
    let shifted: BigInt = d - n * 2;
    -shifted.div_floor(&two_d)
}

/// Euclidean division with the quotient rounded to the nearest Gaussian
/// integer, so that `a = q·b + r` and `N(r) ≤ N(b)/2`.
pub fn divmod_centered(a: &GaussianInt, b: &GaussianInt) -> Result<(GaussianInt, GaussianInt)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = BigInt::from(b.norm());
    let num = a * &b.conj();
    let q = GaussianInt::new(round_half_down(&num.re, &n), round_half_down(&num.im, &n));
    let r = a - &(&q * b);
    Ok((q, r))
}

/// The centered remainder of `a` modulo `m`.
pub fn rem_centered(a: &GaussianInt, m: &GaussianInt) -> Result<GaussianInt> {
    divmod_centered(a, m).map(|(_, r)| r)
}

/// Greatest common divisor, normalized into the canonical sector.
pub fn gcd(a: &GaussianInt, b: &GaussianInt) -> Result<GaussianInt> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroInput("gcd"));
    }
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem_centered(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(canonicalize(&x)?.1)
}

/// `base^exp` reduced modulo `m`, every intermediate product reduced.
pub fn mod_pow(base: &GaussianInt, exp: &BigUint, m: &GaussianInt) -> Result<GaussianInt> {
    if m.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = rem_centered(&GaussianInt::one(), m)?;
    let mut b = rem_centered(base, m)?;
    for bit in 0..exp.bits() {
        if exp.bit(bit) {
            acc = rem_centered(&(&acc * &b), m)?;
        }
        b = rem_centered(&b.square(), m)?;
    }
    Ok(acc)
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag = |f: &mut fmt::Formatter<'_>, im: &BigInt, with_plus: bool| -> fmt::Result {
            let mag = im.abs();
            let sign = match (im.sign(), with_plus) {
                (Sign::Minus, _) => "-",
                (_, true) => "+",
                _ => "",
            };
            if mag.is_one() {
                write!(f, "{sign}i")
            } else {
                write!(f, "{sign}{mag}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => imag(f, &self.im, false),
            (false, false) => {
                write!(f, "{}", self.re)?;
                imag(f, &self.im, true)
            }
        }
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussianInt({self})")
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` with an optional leading sign; the
/// imaginary coefficient may be omitted (`i`, `-i`, `3+i`).
pub fn parse_gaussian(text: &str) -> Result<GaussianInt> {
    let bytes = text.as_bytes();
    let mut pos = 0;

    let sign_at = |pos: usize| match bytes.get(pos) {
        Some(b'+') => Some(1),
        Some(b'-') => Some(-1),
        _ => None,
    };
    let digits_at = |start: usize| {
        let end = start + bytes[start..].iter().take_while(|b| b.is_ascii_digit()).count();
        (end, &text[start..end])
    };
    let to_int = |digits: &str, sign: i32| -> BigInt {
        let v = if digits.is_empty() {
            BigInt::one()
        } else {
            digits.parse::<BigInt>().expect("ascii digits")
        };
        if sign < 0 {
            -v
        } else {
            v
        }
    };

    if bytes.is_empty() {
        return Err(Error::parse(text, 0, "empty literal"));
    }
    let lead = sign_at(pos).unwrap_or(1);
    if sign_at(pos).is_some() {
        pos += 1;
    }
    let (end, first) = digits_at(pos);
    pos = end;

    if bytes.get(pos) == Some(&b'i') {
        pos += 1;
        if pos != bytes.len() {
            return Err(Error::parse(text, pos, "unexpected trailing input"));
        }
        return Ok(GaussianInt::new(0, to_int(first, lead)));
    }
    if first.is_empty() {
        return Err(Error::parse(text, pos, "expected a digit or 'i'"));
    }
    let re = to_int(first, lead);
    if pos == bytes.len() {
        return Ok(GaussianInt::new(re, 0));
    }
    let Some(sign) = sign_at(pos) else {
        return Err(Error::parse(text, pos, "expected '+', '-' or 'i'"));
    };
    pos += 1;
    let (end, second) = digits_at(pos);
    pos = end;
    if bytes.get(pos) != Some(&b'i') {
        return Err(Error::parse(text, pos, "expected a digit or 'i'"));
    }
    pos += 1;
    if pos != bytes.len() {
        return Err(Error::parse(text, pos, "unexpected trailing input"));
    }
    Ok(GaussianInt::new(re, to_int(second, sign)))
}

impl FromStr for GaussianInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_gaussian(s)
    }
}

// Structured form: `{"re": .., "im": ..}`. Components that fit in an i64 are
// plain JSON integers; larger ones are decimal strings.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(v: &BigInt) -> Self {
        v.to_i64().map_or_else(|| IntRepr::Big(v.to_string()), IntRepr::Small)
    }

    fn into_big<E: serde::de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GaussianRecord {
    re: IntRepr,
    im: IntRepr,
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        GaussianRecord {
            re: IntRepr::from_big(&self.re),
            im: IntRepr::from_big(&self.im),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rec = GaussianRecord::deserialize(deserializer)?;
        Ok(GaussianInt::new(rec.re.into_big()?, rec.im.into_big()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm(&g(2, 1)), BigUint::from(5u32));
        assert_eq!(norm(&g(0, 0)), BigUint::from(0u32));
        assert_eq!(norm(&g(3, -4)), BigUint::from(25u32));
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&g(-2, 0)).unwrap(), (UnitPower::new(2), g(2, 0)));
        assert_eq!(canonicalize(&g(0, 3)).unwrap(), (UnitPower::new(1), g(3, 0)));
        assert_eq!(canonicalize(&g(1, -1)).unwrap(), (UnitPower::new(3), g(1, 1)));
        assert_eq!(canonicalize(&g(0, 0)), Err(Error::ZeroInput("canonicalize")));
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(divmod_centered(&g(5, 3), &g(2, 1)).unwrap(), (g(3, 0), g(-1, 0)));
        assert_eq!(divmod_centered(&g(7, 0), &g(7, 0)).unwrap(), (g(1, 0), g(0, 0)));
        assert_eq!(divmod_centered(&g(1, 0), &g(0, 0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_by_one_plus_i_meets_bound() {
        // 1/(1+i) = (1-i)/2: both components are ties. The candidates are
        // q ∈ {0, 1, -i, 1-i}; every one leaves a remainder of norm 1.
        for q in [g(0, 0), g(1, 0), g(0, -1), g(1, -1)] {
            let r = g(1, 0) - &q * &g(1, 1);
            assert_eq!(r.norm(), BigUint::from(1u32));
        }
        let (q, r) = divmod_centered(&g(1, 0), &g(1, 1)).unwrap();
        // ties toward floor: re(1/2) -> 0, im(-1/2) -> -1
        assert_eq!(q, g(0, -1));
        assert_eq!(r, g(0, 1));
        assert!(r.norm() <= BigUint::from(1u32));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&g(2, 1), &g(2, -1)).unwrap(), g(1, 0));
        assert_eq!(gcd(&g(4, 0), &g(6, 0)).unwrap(), g(2, 0));
        assert_eq!(gcd(&g(1, 1), &g(2, 0)).unwrap(), g(1, 1));
        assert_eq!(gcd(&g(0, -5), &g(0, 0)).unwrap(), g(5, 0));
        assert_eq!(gcd(&g(0, 0), &g(0, 0)), Err(Error::ZeroInput("gcd")));
    }

    #[test]
    fn mod_pow_examples() {
        let three = g(3, 0);
        assert_eq!(mod_pow(&g(1, -1), &BigUint::from(2u32), &three).unwrap(), g(0, 1));
        assert_eq!(mod_pow(&g(17, -4), &BigUint::from(0u32), &three).unwrap(), g(1, 0));
        assert_eq!(
            mod_pow(&g(2, 1), &BigUint::from(1u32), &three).unwrap(),
            rem_centered(&g(2, 1), &three).unwrap()
        );
        assert_eq!(
            mod_pow(&g(1, 0), &BigUint::from(1u32), &g(0, 0)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mod_pow_matches_repeated_multiplication() {
        let m = g(7, 2);
        let base = g(-3, 5);
        let mut naive = GaussianInt::one();
        for e in 0u32..40 {
            let fast = mod_pow(&base, &BigUint::from(e), &m).unwrap();
            assert!((&fast - &naive).is_divisible_by(&m), "exponent {e}");
            naive = &naive * &base;
        }
    }

    #[test]
    fn gcd_against_divisor_enumeration() {
        // every common divisor found by brute force must divide the gcd
        let pts: Vec<GaussianInt> = (-6..=6)
            .flat_map(|a| (-6..=6).map(move |b| g(a, b)))
            .filter(|z| !z.is_zero())
            .collect();
        for (a, b) in [
            (g(6, 8), g(10, 0)),
            (g(3, 9), g(-6, 3)),
            (g(4, 4), g(0, 8)),
            (g(5, 5), g(7, 1)),
        ] {
            let d = gcd(&a, &b).unwrap();
            assert!(a.is_divisible_by(&d) && b.is_divisible_by(&d));
            for c in &pts {
                if a.is_divisible_by(c) && b.is_divisible_by(c) {
                    assert!(d.is_divisible_by(c), "{c} | {a}, {b} but not gcd {d}");
                }
            }
        }
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_gaussian("-3+4i").unwrap(), g(-3, 4));
        assert_eq!(parse_gaussian("7").unwrap(), g(7, 0));
        assert_eq!(parse_gaussian("-2i").unwrap(), g(0, -2));
        assert_eq!(parse_gaussian("i").unwrap(), g(0, 1));
        assert_eq!(parse_gaussian("+1-i").unwrap(), g(1, -1));
        assert_eq!(
            parse_gaussian("123456789012345678901234567890").unwrap().re.to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn parse_rejects_garbage_with_position() {
        for (text, pos) in [
            ("", 0),
            ("1 +2i", 1),
            ("3+4", 3),
            ("2i3", 2),
            ("x", 0),
            ("1+2ii", 4),
            ("--1", 1),
        ] {
            match parse_gaussian(text) {
                Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?} parsed as {other:?}"),
            }
        }
        let msg = parse_gaussian("3+4").unwrap_err().to_string();
        assert!(msg.contains("3+4\n     ^"), "{msg}");
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(0, 0).to_string(), "0");
        assert_eq!(g(1, 1).to_string(), "1+i");
        assert_eq!(g(2, -1).to_string(), "2-i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(-3, 4).to_string(), "-3+4i");
        assert_eq!(g(0, 7).to_string(), "7i");
    }

    #[test]
    fn serde_record() {
        let z = g(-3, 4);
        let js = serde_json::to_string(&z).unwrap();
        assert_eq!(js, r#"{"re":-3,"im":4}"#);
        let big = GaussianInt::new("99999999999999999999999".parse::<BigInt>().unwrap(), 1);
        let js = serde_json::to_string(&big).unwrap();
        assert_eq!(js, r#"{"re":"99999999999999999999999","im":1}"#);
        assert_eq!(serde_json::from_str::<GaussianInt>(&js).unwrap(), big);
    }

    fn arb_gauss(r: i64) -> impl Strategy<Value = GaussianInt> {
        (-r..=r, -r..=r).prop_map(|(a, b)| g(a, b))
    }

    fn arb_nonzero(r: i64) -> impl Strategy<Value = GaussianInt> {
        arb_gauss(r).prop_filter("nonzero", |z| !z.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2000))]

        #[test]
        fn divmod_reconstructs_and_bounds(a in arb_gauss(1_000_000), b in arb_nonzero(5_000)) {
            let (q, r) = divmod_centered(&a, &b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.norm() * 2u32 <= b.norm());
        }

        #[test]
        fn canonicalize_reconstructs_and_is_idempotent(z in arb_nonzero(10_000)) {
            let (s, zc) = canonicalize(&z).unwrap();
            prop_assert_eq!(&s.to_gaussian() * &zc, z.clone());
            prop_assert_eq!(canonicalize(&zc).unwrap(), (UnitPower::ONE, zc.clone()));
            let in_sector = [z.clone(), z.mul_i(), -&z, -z.mul_i()]
                .iter()
                .filter(|w| w.in_canonical_sector())
                .count();
            prop_assert_eq!(in_sector, 1);
        }

        #[test]
        fn norm_is_multiplicative(a in arb_gauss(1_000_000), b in arb_gauss(1_000_000)) {
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn gcd_divides_both(a in arb_gauss(500), b in arb_gauss(500)) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let d = gcd(&a, &b).unwrap();
            prop_assert!(d.in_canonical_sector());
            prop_assert!(a.is_divisible_by(&d));
            prop_assert!(b.is_divisible_by(&d));
        }

        #[test]
        fn text_round_trip(z in arb_gauss(i64::MAX / 2)) {
            prop_assert_eq!(parse_gaussian(&z.to_string()).unwrap(), z);
        }
    }
}
