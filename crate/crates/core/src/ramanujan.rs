//! Restricting the variables of `x² + i·y² + z² + i·w²` to lattice lines
//! `m·t` (`t` a rational integer) collapses the form to an integer diagonal
//! form `c₁a² + c₂b² + c₃c² + c₄d²`. For `y = (1 - i)t` the `i`-weighted slot
//! contributes `i·(1 - i)²·t² = 2t²`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{parse_gaussian, GaussianInt};

const SLOTS: [char; 4] = ['x', 'y', 'z', 'w'];

/// Multiplier `m` per variable: the variable is constrained to `m·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionSpec {
    pub multipliers: [GaussianInt; 4],
}

/// `c₁a² + c₂b² + c₃c² + c₄d²` over the rational integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagonalFormZ {
    pub coeffs: [u64; 4],
}

impl RestrictionSpec {
    pub fn new(multipliers: [GaussianInt; 4]) -> Self {
        RestrictionSpec { multipliers }
    }

    /// Named restrictions reproducing `[1,2,1,2]`, `[1,2,1,8]`, `[1,2,4,2]` and `[1,2,4,8]`.
    pub fn preset(name: &str) -> Option<Self> {
        let one = GaussianInt::from(1);
        let two = GaussianInt::from(2);
        let line = GaussianInt::new(1, -1);
        let line2 = GaussianInt::new(2, -2);
        let m = match name {
            "1212" => [one.clone(), line.clone(), one, line],
            "1218" => [one.clone(), line, one, line2],
            "1242" => [one, line.clone(), two, line],
            "1248" => [one, line, two, line2],
            _ => return None,
        };
        Some(RestrictionSpec::new(m))
    }

    pub const PRESETS: [&'static str; 4] = ["1212", "1218", "1242", "1248"];
}

impl fmt::Display for RestrictionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (var, m)) in SLOTS.iter().zip(&self.multipliers).enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{var}=")?;
            if m.im.is_zero() {
                match m.re.to_i64() {
                    Some(1) => write!(f, "t")?,
                    Some(-1) => write!(f, "-t")?,
                    _ => write!(f, "{}t", m.re)?,
                }
            } else {
                write!(f, "({m})t")?;
            }
        }
        Ok(())
    }
}

/// One slot multiplier: `t`, `-t`, `3t`, `(1-i)t`, `2(1-i)t`, `-(1-i)t`.
fn parse_multiplier(full: &str, offset: usize, text: &str) -> Result<GaussianInt> {
    let err = |pos: usize, msg: &str| Error::parse(full, offset + pos, msg);
    let Some(body) = text.strip_suffix('t') else {
        return Err(err(text.len(), "expected multiplier ending in 't'"));
    };
    let (scale_text, paren) = match body.find('(') {
        Some(open) => {
            if !body.ends_with(')') {
                return Err(err(body.len(), "expected ')' before 't'"));
            }
            let inner = &body[open + 1..body.len() - 1];
            let g = parse_gaussian(inner).map_err(|e| match e {
                Error::Parse { position, message, .. } => err(open + 1 + position, &message),
                other => other,
            })?;
            (&body[..open], Some(g))
        }
        None => (body, None),
    };
    let scale = match scale_text {
        "" | "+" => BigInt::from(1),
        "-" => BigInt::from(-1),
        s => s.parse::<BigInt>().map_err(|_| err(0, "expected an integer scale"))?,
    };
    let scale = GaussianInt::new(scale, 0);
    Ok(match paren {
        Some(g) => &scale * &g,
        None => scale,
    })
}

impl FromStr for RestrictionSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut slots: [Option<GaussianInt>; 4] = Default::default();
        let mut offset = 0;
        for piece in text.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let item = piece.trim();
            let start = offset + lead;
            offset += piece.len() + 1;
            let Some((var, mult)) = item.split_once('=') else {
                return Err(Error::parse(text, start, "expected '<var>=<multiplier>t'"));
            };
            let Some(slot) = SLOTS.iter().position(|c| var.len() == 1 && var.starts_with(*c)) else {
                return Err(Error::parse(text, start, "variable must be one of x, y, z, w"));
            };
            if slots[slot].is_some() {
                return Err(Error::parse(text, start, "variable given twice"));
            }
            slots[slot] = Some(parse_multiplier(text, start + var.len() + 1, mult)?);
        }
        let missing = slots.iter().position(Option::is_none);
        if let Some(k) = missing {
            return Err(Error::parse(text, text.len(), format!("missing variable {}", SLOTS[k])));
        }
        Ok(RestrictionSpec::new(slots.map(|m| m.expect("checked"))))
    }
}

impl fmt::Display for DiagonalFormZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.coeffs;
        write!(f, "[{a},{b},{c},{d}]")
    }
}

impl FromStr for DiagonalFormZ {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let inner = text
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(text, 0, "expected '[c1,c2,c3,c4]'"))?;
        let mut coeffs = [0u64; 4];
        let mut count = 0;
        let mut pos = 1;
        for part in inner.split(',') {
            if count == 4 {
                return Err(Error::parse(text, pos, "more than four coefficients"));
            }
            let v: u64 = part
                .trim()
                .parse()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::parse(text, pos, "expected a positive integer"))?;
            coeffs[count] = v;
            count += 1;
            pos += part.len() + 1;
        }
        if count != 4 {
            return Err(Error::parse(text, text.len() - 1, "expected four coefficients"));
        }
        Ok(DiagonalFormZ { coeffs })
    }
}

/// The integer coefficients induced by a restriction: `m²` in the `x`, `z`
/// slots and `i·m²` in the `y`, `w` slots. Each must be a positive integer.
pub fn restrict(spec: &RestrictionSpec) -> Result<DiagonalFormZ> {
    let mut coeffs = [0u64; 4];
    for (k, m) in spec.multipliers.iter().enumerate() {
        let sq = m.square();
        let c = if k % 2 == 1 { sq.mul_i() } else { sq };
        if !c.im.is_zero() || !c.re.is_positive() {
            return Err(Error::InvalidRestriction(format!(
                "slot {} with multiplier {m} gives coefficient {c}, not a positive integer",
                SLOTS[k]
            )));
        }
        coeffs[k] =
            c.re.to_u64()
                .ok_or_else(|| Error::InvalidRestriction(format!("coefficient {c} is too large")))?;
    }
    Ok(DiagonalFormZ { coeffs })
}

/// Values `≤ bound` of `c·a² + d·b²` over rational integers, as a membership table.
fn binary_values(c: u64, d: u64, bound: u64) -> Vec<bool> {
    let mut hit = vec![false; bound as usize + 1];
    let mut a = 0u64;
    while c * a * a <= bound {
        let base = c * a * a;
        let mut b = 0u64;
        while base + d * b * b <= bound {
            hit[(base + d * b * b) as usize] = true;
            b += 1;
        }
        a += 1;
    }
    hit
}

/// Decide every `n` in `1..=bound`; returns the least `n` the form misses.
/// Runs on the current rayon pool; the answer does not depend on its size.
pub fn represents_all_up_to(form: &DiagonalFormZ, bound: u64) -> Option<u64> {
    let [c1, c2, c3, c4] = form.coeffs;
    let left = binary_values(c1, c2, bound);
    let right = binary_values(c3, c4, bound);
    let left_values: Vec<usize> = left.iter().enumerate().filter(|(_, &h)| h).map(|(v, _)| v).collect();
    (1..=bound).into_par_iter().find_first(|&n| {
        let n = n as usize;
        !left_values.iter().take_while(|&&v| v <= n).any(|&v| right[n - v])
    })
}
