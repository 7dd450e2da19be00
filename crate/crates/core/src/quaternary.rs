//! The quaternary form `x² + i·y² + z² + i·w²` and its composition identity.
//!
//! For any commutative ring and coefficients `A`, `B`,
//!
//! ```text
//! (A·x₁² + B·y₁² + A·z₁² + B·w₁²)(A·x₂² + B·y₂² + A·z₂² + B·w₂²)
//!     = X² + AB·Y² + Z² + AB·W²
//! ```
//!
//! with `X, Y, Z, W` bilinear in the two quadruples. With `A = 1`, `B = i`
//! the form is closed under multiplication, so a witness for every canonical
//! prime yields a witness for every Gaussian integer.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::binary::{absorb_unit_binary, descend, represent_class_c};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, UnitPower};
use crate::primes::{classify, factorize, PrimeClass};

pub type Quadruple = [GaussianInt; 4];

/// A witness `x² + i·y² + z² + i·w² = target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatRep {
    pub x: GaussianInt,
    pub y: GaussianInt,
    pub z: GaussianInt,
    pub w: GaussianInt,
    pub target: GaussianInt,
}

impl QuatRep {
    /// Build from a quadruple; the target is computed, so the result is valid.
    pub fn from_parts([x, y, z, w]: Quadruple) -> Self {
        let target = form_value(&x, &y, &z, &w);
        QuatRep { x, y, z, w, target }
    }

    /// Build with a claimed target, rejecting it if the equation fails.
    pub fn new(parts: Quadruple, target: GaussianInt) -> Result<Self> {
        let rep = QuatRep::from_parts(parts);
        if rep.target != target {
            return Err(Error::InvalidWitness(format!("{rep} does not evaluate to {target}")));
        }
        Ok(rep)
    }

    pub fn identity() -> Self {
        QuatRep::from_parts([
            GaussianInt::one(),
            GaussianInt::zero(),
            GaussianInt::zero(),
            GaussianInt::zero(),
        ])
    }

    pub fn parts(&self) -> Quadruple {
        [self.x.clone(), self.y.clone(), self.z.clone(), self.w.clone()]
    }

    pub fn check(&self) -> Result<()> {
        let v = evaluate(self);
        if v != self.target {
            return Err(Error::InvalidWitness(format!(
                "({})^2 + i({})^2 + ({})^2 + i({})^2 = {v}, not {}",
                self.x, self.y, self.z, self.w, self.target
            )));
        }
        Ok(())
    }
}

impl fmt::Display for QuatRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = ({})^2 + i({})^2 + ({})^2 + i({})^2",
            self.target, self.x, self.y, self.z, self.w
        )
    }
}

fn form_value(x: &GaussianInt, y: &GaussianInt, z: &GaussianInt, w: &GaussianInt) -> GaussianInt {
    x.square() + y.square().mul_i() + z.square() + w.square().mul_i()
}

/// `x² + i·y² + z² + i·w²`, recomputed from the coordinates.
pub fn evaluate(r: &QuatRep) -> GaussianInt {
    form_value(&r.x, &r.y, &r.z, &r.w)
}

/// Coefficients of `A·x² + B·y² + A·z² + B·w²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionCoefficients {
    pub a: GaussianInt,
    pub b: GaussianInt,
}

impl CompositionCoefficients {
    pub fn gaussian_form() -> Self {
        CompositionCoefficients {
            a: GaussianInt::one(),
            b: GaussianInt::i(),
        }
    }

    /// `A·x² + B·y² + A·z² + B·w²`
    pub fn factor_value(&self, [x, y, z, w]: &Quadruple) -> GaussianInt {
        &self.a * &(x.square() + z.square()) + &self.b * &(y.square() + w.square())
    }

    /// `X² + AB·Y² + Z² + AB·W²`
    pub fn product_value(&self, [x, y, z, w]: &Quadruple) -> GaussianInt {
        let ab = &self.a * &self.b;
        x.square() + z.square() + &ab * &(y.square() + w.square())
    }
}

/// The four bilinear combinations of the composition identity.
pub fn compose_general(coeffs: &CompositionCoefficients, r1: &Quadruple, r2: &Quadruple) -> Quadruple {
    let (a, b) = (&coeffs.a, &coeffs.b);
    let [x1, y1, z1, w1] = r1;
    let [x2, y2, z2, w2] = r2;
    let big_x = a * &(x1 * x2) + b * &(y1 * y2) + a * &(z1 * z2) + b * &(w1 * w2);
    let big_y = x1 * y2 - y1 * x2 - z1 * w2 + w1 * z2;
    let big_z = a * &(x1 * z2) + b * &(y1 * w2) - a * &(z1 * x2) - b * &(w1 * y2);
    let big_w = x1 * w2 - y1 * z2 + z1 * y2 - w1 * x2;
    [big_x, big_y, big_z, big_w]
}

/// Witness for `r1.target · r2.target`.
pub fn compose(r1: &QuatRep, r2: &QuatRep) -> Result<QuatRep> {
    r1.check()?;
    r2.check()?;
    let parts = compose_general(&CompositionCoefficients::gaussian_form(), &r1.parts(), &r2.parts());
    QuatRep::new(parts, &r1.target * &r2.target)
}

/// Witness for `iˢ · r.target`, rotating the pairs `(x, y)` and `(z, w)`.
pub fn absorb_unit_quat(r: &QuatRep, s: UnitPower) -> QuatRep {
    let (x, y) = absorb_unit_binary(&r.x, &r.y, s);
    let (z, w) = absorb_unit_binary(&r.z, &r.w, s);
    QuatRep {
        x,
        y,
        z,
        w,
        target: &s.to_gaussian() * &r.target,
    }
}

/// Witness for a canonical prime: descent for classes A and B, the
/// two-square construction for class C.
pub fn represent_prime(p: &GaussianInt) -> Result<QuatRep> {
    let zero = GaussianInt::zero;
    let parts = match classify(p)? {
        PrimeClass::A | PrimeClass::B => {
            let (x, y) = descend(p)?;
            [x, y, zero(), zero()]
        }
        PrimeClass::C => {
            let c = represent_class_c(p)?;
            if c.twisted {
                [zero(), c.x, zero(), c.y]
            } else {
                [c.x, zero(), c.y, zero()]
            }
        }
    };
    QuatRep::new(parts, p.clone())
}

/// Witness for any Gaussian integer: factor, represent each prime, fold the
/// witnesses left to right in well-order, then absorb the unit.
pub fn represent(t: &GaussianInt) -> Result<QuatRep> {
    if t.is_zero() {
        return Ok(QuatRep::from_parts(Default::default()));
    }
    let f = factorize(t)?;
    let mut acc = QuatRep::identity();
    for pp in &f.factors {
        let rep = represent_prime(&pp.p)?;
        for _ in 0..pp.alpha {
            acc = compose(&acc, &rep)?;
        }
    }
    let out = absorb_unit_quat(&acc, f.s);
    if out.target != *t {
        return Err(Error::ConstructionFailed(format!(
            "pipeline for {t} produced a witness for {}",
            out.target
        )));
    }
    out.check()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn q(parts: [(i64, i64); 4]) -> Quadruple {
        parts.map(|(a, b)| g(a, b))
    }

    #[test]
    fn compose_general_examples() {
        let r2 = q([(3, -1), (0, 2), (-5, 5), (7, 0)]);
        let one = CompositionCoefficients {
            a: g(1, 0),
            b: g(4, -9),
        };
        assert_eq!(compose_general(&one, &q([(1, 0), (0, 0), (0, 0), (0, 0)]), &r2), r2);

        let gauss = CompositionCoefficients::gaussian_form();
        let out = compose_general(
            &gauss,
            &q([(1, 0), (1, 0), (0, 0), (0, 0)]),
            &q([(1, 0), (0, 0), (1, 0), (1, 0)]),
        );
        assert_eq!(out, q([(1, 0), (-1, 0), (1, 1), (0, 0)]));
        assert_eq!(gauss.product_value(&out), g(1, 3));
        assert_eq!(&g(1, 1) * &g(2, 1), g(1, 3));
    }

    #[test]
    fn compose_examples() {
        let r1 = represent_prime(&g(1, 1)).unwrap();
        let r2 = QuatRep::new(q([(1, 0), (0, 0), (1, 0), (1, 0)]), g(2, 1)).unwrap();
        let c = compose(&r1, &r2).unwrap();
        assert_eq!(c.parts(), q([(1, 0), (-1, 0), (1, 1), (0, 0)]));
        assert_eq!(c.target, g(1, 3));

        assert_eq!(compose(&QuatRep::identity(), &r1).unwrap(), r1);
        // on the right the identity conjugates: (x, y, z, w) -> (x, -y, -z, -w)
        let r = QuatRep::from_parts(q([(2, 1), (0, -3), (5, 5), (1, 0)]));
        let right = compose(&r, &QuatRep::identity()).unwrap();
        assert_eq!(right.parts(), [r.x.clone(), -&r.y, -&r.z, -&r.w]);
        assert_eq!(right.target, r.target);

        let r = QuatRep::from_parts(q([(3, -2), (1, 1), (0, 5), (-4, 2)]));
        assert_eq!(compose(&r, &r).unwrap().target, r.target.square());

        let bad = QuatRep {
            target: g(9, 9),
            ..r1.clone()
        };
        assert!(matches!(compose(&bad, &r1), Err(Error::InvalidWitness(_))));
    }

    #[test]
    fn absorb_examples() {
        let two = QuatRep::new(q([(1, 0), (0, 0), (1, 0), (0, 0)]), g(2, 0)).unwrap();
        let neg = absorb_unit_quat(&two, UnitPower::new(2));
        assert_eq!(neg.parts(), q([(0, 1), (0, 0), (0, 1), (0, 0)]));
        assert_eq!(neg.target, g(-2, 0));
        neg.check().unwrap();

        assert_eq!(absorb_unit_quat(&two, UnitPower::new(0)), two);

        let r = QuatRep::new(q([(1, 0), (1, 0), (0, 0), (0, 0)]), g(1, 1)).unwrap();
        let rot = absorb_unit_quat(&r, UnitPower::new(1));
        assert_eq!(rot.target, g(-1, 1));
        rot.check().unwrap();
    }

    #[test]
    fn represent_prime_examples() {
        assert_eq!(
            represent_prime(&g(1, 1)).unwrap().parts(),
            q([(1, 0), (1, 0), (0, 0), (0, 0)])
        );

        let three = represent_prime(&g(3, 0)).unwrap();
        assert_eq!(three.target, g(3, 0));
        assert!(three.z.is_zero() && three.w.is_zero());
        three.check().unwrap();

        let c = represent_prime(&g(2, 1)).unwrap();
        assert!(c.x.is_zero() && c.z.is_zero());
        c.check().unwrap();
        // the documented alternative (0, 1, 0, 1-i) also evaluates to 2+i
        QuatRep::new(q([(0, 0), (1, 0), (0, 0), (1, -1)]), g(2, 1)).unwrap();

        let untwisted = represent_prime(&g(3, 2)).unwrap();
        assert!(untwisted.y.is_zero() && untwisted.w.is_zero());
        untwisted.check().unwrap();

        assert!(matches!(represent_prime(&g(6, 0)), Err(Error::NotCanonicalPrime(_))));
    }

    #[test]
    fn represent_examples() {
        assert_eq!(represent(&g(0, 0)).unwrap(), QuatRep::from_parts(Default::default()));

        let r = represent(&g(1, 3)).unwrap();
        assert_eq!(r.target, g(1, 3));
        r.check().unwrap();

        // -2 = i·(1+i)²: (1+i)·(1+i) composes to (1+i, 0, 0, 0), then one rotation
        let r = represent(&g(-2, 0)).unwrap();
        assert_eq!(r.parts(), q([(0, 0), (1, 1), (0, 0), (0, 0)]));
        assert_eq!(evaluate(&r), g(-2, 0));

        for u in 0..4 {
            let unit = UnitPower::new(u).to_gaussian();
            assert_eq!(represent(&unit).unwrap().target, unit);
        }
        assert_eq!(represent(&g(7, 7)).unwrap(), represent(&g(7, 7)).unwrap());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            evaluate(&QuatRep::from_parts(q([(1, 0), (1, 0), (0, 0), (0, 0)]))),
            g(1, 1)
        );
        assert_eq!(evaluate(&QuatRep::from_parts(Default::default())), g(0, 0));
        assert_eq!(
            evaluate(&QuatRep::from_parts(q([(1, 0), (-1, 0), (1, 1), (0, 0)]))),
            g(1, 3)
        );
    }

    #[test]
    fn display_form() {
        let r = QuatRep::from_parts(q([(1, 0), (-1, 0), (1, 1), (0, 0)]));
        assert_eq!(r.to_string(), "1+3i = (1)^2 + i(-1)^2 + (1+i)^2 + i(0)^2");
    }

    fn arb_g(r: i64) -> impl Strategy<Value = GaussianInt> {
        (-r..=r, -r..=r).prop_map(|(a, b)| g(a, b))
    }

    fn arb_quad(r: i64) -> impl Strategy<Value = Quadruple> {
        [arb_g(r), arb_g(r), arb_g(r), arb_g(r)]
    }

    proptest! {
        #[test]
        fn general_identity(c1 in arb_quad(50), c2 in arb_quad(50), a in arb_g(50), b in arb_g(50)) {
            let coeffs = CompositionCoefficients { a, b };
            let out = compose_general(&coeffs, &c1, &c2);
            prop_assert_eq!(coeffs.product_value(&out), &coeffs.factor_value(&c1) * &coeffs.factor_value(&c2));
        }

        #[test]
        fn compose_multiplies_targets(c1 in arb_quad(100), c2 in arb_quad(100)) {
            let (r1, r2) = (QuatRep::from_parts(c1), QuatRep::from_parts(c2));
            prop_assert_eq!(evaluate(&compose(&r1, &r2).unwrap()), &evaluate(&r1) * &evaluate(&r2));
        }

        #[test]
        fn absorb_multiplies_by_unit(c in arb_quad(100), s in 0u8..4) {
            let r = QuatRep::from_parts(c);
            let s = UnitPower::new(s);
            let out = absorb_unit_quat(&r, s);
            prop_assert_eq!(evaluate(&out), &s.to_gaussian() * &evaluate(&r));
            prop_assert_eq!(&out.target, &evaluate(&out));
        }
    }
}
