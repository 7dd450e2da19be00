//! Brute-force oracles and the sweep harnesses that certify the constructive
//! modules against them.
//!
//! The oracles work on plain `(i64, i64)` coordinates and never call into the
//! constructive code: they enumerate lattice points in order of
//! (norm, imaginary part, real part) and look up squares in a hash table.
//! Absence is always "absent up to the given search bound".

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::binary::{
    binary_value, descend, i_is_quadratic_residue, initial_solution, niven_mordell_representable, represent_class_c,
};
use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, UnitPower};
use crate::primes::{classify, factorize, nu, primes_up_to, PrimeClass};
use crate::quaternary::{compose_general, evaluate, represent, CompositionCoefficients, QuatRep};
use crate::ramanujan::{represents_all_up_to, restrict, RestrictionSpec};
use crate::report::{Failure, SweepReport};

type P = (i64, i64);

fn mul(a: P, b: P) -> P {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn sq(a: P) -> P {
    mul(a, a)
}

fn sub(a: P, b: P) -> P {
    (a.0 - b.0, a.1 - b.1)
}

fn norm64(a: P) -> i64 {
    a.0 * a.0 + a.1 * a.1
}

fn to_g(p: P) -> GaussianInt {
    GaussianInt::new(p.0, p.1)
}

/// Coordinates must stay far below `i64::MAX` once squared twice.
fn to_p(g: &GaussianInt) -> Result<P> {
    const LIMIT: i64 = 1 << 28;
    match g.to_i64_pair() {
        Some((a, b)) if a.abs() < LIMIT && b.abs() < LIMIT => Ok((a, b)),
        _ => Err(Error::Precondition(format!(
            "{g} is outside the oracle's coordinate range"
        ))),
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All lattice points of norm `≤ bound`, ordered by (norm, im, re).
pub fn points_up_to(bound: u64) -> Vec<P> {
    let r = isqrt(bound) as i64;
    let mut pts: Vec<P> = (-r..=r)
        .flat_map(|a| (-r..=r).map(move |b| (a, b)))
        .filter(|&p| norm64(p) as u64 <= bound)
        .collect();
    pts.sort_by_key(|&(a, b)| (a * a + b * b, b, a));
    pts
}

/// Every square `s = r²` with `N(r) ≤ bound`, mapped to its least root.
pub struct SquareTable {
    points: Vec<P>,
    roots: HashMap<P, P>,
}

impl SquareTable {
    pub fn new(bound: u64) -> Self {
        let points = points_up_to(bound);
        let mut roots = HashMap::with_capacity(points.len());
        for &p in &points {
            roots.entry(sq(p)).or_insert(p);
        }
        SquareTable { points, roots }
    }

    fn prefix(&self, bound: u64) -> &[P] {
        let end = self.points.partition_point(|&p| norm64(p) as u64 <= bound);
        &self.points[..end]
    }

    // both roots ±r of a square share a norm, so filtering the least one suffices
    fn root(&self, s: P, bound: u64) -> Option<P> {
        self.roots.get(&s).copied().filter(|&r| norm64(r) as u64 <= bound)
    }

    /// Least `(x, y)` in scan order with `x² + i·y² = t`.
    pub fn binary(&self, t: P, bound: u64) -> Option<(P, P)> {
        self.prefix(bound).iter().find_map(|&x| {
            let rest = sub(t, sq(x));
            // i·y² = rest  ⇔  y² = -i·rest
            self.root((rest.1, -rest.0), bound).map(|y| (x, y))
        })
    }

    /// Least `(x, y)` in scan order with `x² + y² = t`.
    pub fn two_squares(&self, t: P, bound: u64) -> Option<(P, P)> {
        self.prefix(bound)
            .iter()
            .find_map(|&x| self.root(sub(t, sq(x)), bound).map(|y| (x, y)))
    }
}

fn require_bound(t: &GaussianInt, bound: u64) -> Result<P> {
    let p = to_p(t)?;
    if (norm64(p) as u64) > bound {
        return Err(Error::Precondition(format!("search bound {bound} is below N({t})")));
    }
    Ok(p)
}

/// Exhaustive search for `x² + i·y² = t` with `N(x), N(y) ≤ bound`.
pub fn brute_force_binary(t: &GaussianInt, bound: u64) -> Result<Option<(GaussianInt, GaussianInt)>> {
    let tp = require_bound(t, bound)?;
    Ok(SquareTable::new(bound)
        .binary(tp, bound)
        .map(|(x, y)| (to_g(x), to_g(y))))
}

/// Exhaustive search for `x² + y² = a + 2bi` with `N(x), N(y) ≤ bound`.
pub fn brute_force_two_squares(a: i64, b: i64, bound: u64) -> Result<Option<(GaussianInt, GaussianInt)>> {
    let t = GaussianInt::new(a, 2 * b);
    let tp = require_bound(&t, bound)?;
    Ok(SquareTable::new(bound)
        .two_squares(tp, bound)
        .map(|(x, y)| (to_g(x), to_g(y))))
}

/// Meet-in-the-middle search for `x² + i·y² + z² + i·w² = t`.
pub fn brute_force_quat(t: &GaussianInt, bound: u64) -> Result<Option<QuatRep>> {
    let tp = require_bound(t, bound)?;
    let pts = points_up_to(bound);
    let value = |x: P, y: P| {
        let (a, b) = (sq(x), sq(y));
        (a.0 - b.1, a.1 + b.0)
    };
    let mut halves: HashMap<P, (P, P)> = HashMap::new();
    for &x in &pts {
        for &y in &pts {
            halves.entry(value(x, y)).or_insert((x, y));
        }
    }
    for &z in &pts {
        for &w in &pts {
            if let Some(&(x, y)) = halves.get(&sub(tp, value(z, w))) {
                return Ok(Some(QuatRep::from_parts([to_g(x), to_g(y), to_g(z), to_g(w)])));
            }
        }
    }
    Ok(None)
}

/// Run `f` on a dedicated pool of `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

/// Per-instance outcome merged into a report in input order.
#[derive(Default)]
struct Outcome {
    failures: Vec<Failure>,
    counts: Vec<(&'static str, u64)>,
}

impl Outcome {
    fn fail(mut self, f: Failure) -> Self {
        self.failures.push(f);
        self
    }

    fn count(mut self, key: &'static str) -> Self {
        self.counts.push((key, 1));
        self
    }
}

fn merge(mut report: SweepReport, outcomes: Vec<Outcome>, start: Instant) -> SweepReport {
    report.instances_checked = outcomes.len() as u64;
    for o in outcomes {
        report.failures.extend(o.failures);
        for (k, v) in o.counts {
            report.count(k, v);
        }
    }
    report.finish(start.elapsed())
}

fn class_key(c: PrimeClass) -> &'static str {
    match c {
        PrimeClass::A => "classA",
        PrimeClass::B => "classB",
        PrimeClass::C => "classC",
    }
}

fn random_g(rng: &mut ChaCha8Rng, range: i64) -> GaussianInt {
    GaussianInt::new(rng.random_range(-range..=range), rng.random_range(-range..=range))
}

/// The general composition identity on seeded random octuples. With
/// `coeffs = None` the coefficients `A`, `B` are drawn per trial as well.
pub fn verify_composition_random(
    trials: u64,
    range: i64,
    seed: u64,
    coeffs: Option<&CompositionCoefficients>,
) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("composition")
        .bound("trials", trials)
        .bound("componentRange", range)
        .with_seed(seed);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial);
            let mut draw = || [0; 4].map(|_| random_g(&mut rng, range));
            let (r1, r2) = (draw(), draw());
            let c = coeffs.cloned().unwrap_or_else(|| CompositionCoefficients {
                a: random_g(&mut rng, range),
                b: random_g(&mut rng, range),
            });
            let expected = &c.factor_value(&r1) * &c.factor_value(&r2);
            let got = c.product_value(&compose_general(&c, &r1, &r2));
            let out = Outcome::default();
            if expected == got {
                out
            } else {
                out.fail(Failure::new(
                    format!("trial {trial}: {r1:?} {r2:?} A={} B={}", c.a, c.b),
                    expected,
                    got,
                ))
            }
        })
        .collect();
    merge(report, outcomes, start)
}

/// `represent(t)` evaluates back to `t` for every `t` with `N(t) ≤ bound`.
pub fn universality_sweep(bound: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("universality").bound("normBound", bound);
    let outcomes = points_up_to(bound)
        .into_par_iter()
        .map(|p| {
            let t = to_g(p);
            let mut out = Outcome::default();
            match represent(&t) {
                Ok(r) => {
                    let v = evaluate(&r);
                    if v != t || r.target != t {
                        out = out.fail(Failure::new(&t, &t, v));
                    }
                }
                Err(e) => out = out.fail(Failure::new(&t, &t, e)),
            }
            if t.is_zero() {
                return out.count("zero");
            }
            if t.is_unit() {
                out = out.count("units");
            }
            if let Ok(f) = factorize(&t) {
                for pp in &f.factors {
                    if let Ok(c) = classify(&pp.p) {
                        out.counts.push((class_key(c), u64::from(pp.alpha)));
                    }
                }
            }
            out
        })
        .collect();
    merge(report, outcomes, start)
}

/// A complete residue system of `Z[i]/(p)` for a canonical prime `p`.
fn residues(p: P) -> Vec<P> {
    let n = norm64(p);
    if p.1 == 0 {
        // inert rational prime q: Z[i]/(q) has the q² elements a + bi, 0 ≤ a, b < q
        (0..p.0).flat_map(|a| (0..p.0).map(move |b| (a, b))).collect()
    } else {
        // ramified or split: the rational integers 0..N(p) already cover every class
        (0..n).map(|a| (a, 0)).collect()
    }
}

fn divisible(a: P, p: P) -> bool {
    let n = norm64(p);
    let (re, im) = mul(a, (p.0, -p.1));
    re % n == 0 && im % n == 0
}

/// For each canonical prime up to `bound`: is `x² ≡ i` solvable, does a
/// coprime solution of `x² + i·y² ≡ 0` exist, and do both agree with the
/// residue criterion and with the class being A or B?
pub fn residue_sweep(bound: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("lemma1").bound("primeNormBound", bound);
    let outcomes = primes_up_to(bound)
        .into_par_iter()
        .map(|prime| {
            let p = to_p(&prime).expect("small prime");
            let res = residues(p);
            let mut out = Outcome::default();
            if res.len() as i64 != norm64(p) {
                out = out.fail(Failure::new(&prime, "residue system of size N(p)", res.len()));
            }
            let i_is_square = res.iter().any(|&r| divisible(sub(sq(r), (0, 1)), p));
            // A coprime pair cannot have p | y (then p | x too); dividing by y
            // reduces any solution to y = 1, and (x, 1) is always coprime.
            let coprime_solution = res.iter().any(|&x| divisible((sq(x).0, sq(x).1 + 1), p));
            let class = classify(&prime).expect("canonical prime");
            let in_ab = class != PrimeClass::C;
            let criterion = i_is_quadratic_residue(&prime).expect("canonical prime");
            let claims = [
                ("exhaustive x^2 = i", i_is_square),
                ("coprime x^2 + iy^2 = 0", coprime_solution),
                ("Euler criterion", criterion),
            ];
            for (what, got) in claims {
                if got != in_ab {
                    out = out.fail(Failure::new(&prime, format!("{what}: {in_ab} (class {class})"), got));
                }
            }
            if in_ab {
                if let Err(e) = initial_solution(&prime) {
                    out = out.fail(Failure::new(&prime, "initial solution", e));
                }
            }
            out.count(class_key(class))
        })
        .collect();
    merge(report, outcomes, start)
}

/// `descend(p)` for every class A/B prime up to `bound`, cross-checked
/// against the binary oracle (search bound `N(p)`) up to `oracle_bound`.
pub fn descent_sweep(bound: u64, oracle_bound: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("descent")
        .bound("primeNormBound", bound)
        .bound("oracleNormBound", oracle_bound);
    let table = SquareTable::new(oracle_bound);
    let primes: Vec<GaussianInt> = primes_up_to(bound)
        .into_iter()
        .filter(|p| classify(p).map(|c| c != PrimeClass::C).unwrap_or(false))
        .collect();
    let outcomes = primes
        .into_par_iter()
        .map(|prime| {
            let mut out = Outcome::default().count(class_key(classify(&prime).expect("prime")));
            match descend(&prime) {
                Ok((x, y)) => {
                    let v = binary_value(&x, &y);
                    if v != prime {
                        out = out.fail(Failure::new(&prime, &prime, v));
                    }
                }
                Err(e) => out = out.fail(Failure::new(&prime, &prime, e)),
            }
            let n = prime.norm().to_u64().expect("small norm");
            if n <= oracle_bound {
                match table.binary(to_p(&prime).expect("small"), n) {
                    Some(_) => out = out.count("oracleWitnesses"),
                    None => out = out.fail(Failure::new(&prime, "oracle witness within N(p)", "absent")),
                }
            }
            out
        })
        .collect();
    merge(report, outcomes, start)
}

/// The closed-form condition against exhaustive two-square search for all
/// `|a|, |b| ≤ range`, with search bound `4(a² + 4b²)`.
pub fn niven_sweep(range: i64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("niven").bound("range", range);
    let max_bound = (4 * (range * range + 4 * range * range)) as u64;
    let table = SquareTable::new(max_bound);
    let pairs: Vec<(i64, i64)> = (-range..=range)
        .flat_map(|a| (-range..=range).map(move |b| (a, b)))
        .collect();
    let outcomes = pairs
        .into_par_iter()
        .map(|(a, b)| {
            let bound = (4 * (a * a + 4 * b * b)) as u64;
            let t = (a, 2 * b);
            let found = table.two_squares(t, bound);
            let predicted = niven_mordell_representable(&BigInt::from(a), &BigInt::from(b));
            let mut out = Outcome::default().count(if predicted { "representable" } else { "excluded" });
            if let Some((x, y)) = found {
                let (sx, sy) = (sq(x), sq(y));
                if (sx.0 + sy.0, sx.1 + sy.1) != t {
                    out = out.fail(Failure::new(
                        format!("({a}, {b})"),
                        "valid oracle witness",
                        format!("{x:?} {y:?}"),
                    ));
                }
            }
            if predicted != found.is_some() {
                out = out.fail(Failure::new(format!("({a}, {b})"), predicted, found.is_some()));
            }
            out
        })
        .collect();
    merge(report, outcomes, start)
}

/// Every class C prime up to `bound` gets a verified two-square witness.
pub fn class_c_sweep(bound: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("class-c").bound("primeNormBound", bound);
    let primes: Vec<GaussianInt> = primes_up_to(bound)
        .into_iter()
        .filter(|p| classify(p).ok() == Some(PrimeClass::C))
        .collect();
    let outcomes = primes
        .into_par_iter()
        .map(|prime| {
            let out = Outcome::default();
            match represent_class_c(&prime) {
                Ok(w) if w.value() == prime => out.count(if w.twisted { "twisted" } else { "untwisted" }),
                Ok(w) => out.fail(Failure::new(&prime, &prime, w.value())),
                Err(e) => out.fail(Failure::new(&prime, "witness", e)),
            }
        })
        .collect();
    merge(report, outcomes, start)
}

/// Properties of `ν`: additivity on seeded random pairs with norms
/// `≤ pair_norm_bound`, `ν = 0` on the four units and `ν = 1` on every
/// canonical prime (and its associates) up to `prime_bound`.
pub fn nu_sweep(pairs: u64, pair_norm_bound: u64, prime_bound: u64, seed: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("nu")
        .bound("pairs", pairs)
        .bound("pairNormBound", pair_norm_bound)
        .bound("primeNormBound", prime_bound)
        .with_seed(seed);
    let r = isqrt(pair_norm_bound) as i64;
    let draw = move |rng: &mut ChaCha8Rng| loop {
        let p = (rng.random_range(-r..=r), rng.random_range(-r..=r));
        if p != (0, 0) && norm64(p) as u64 <= pair_norm_bound {
            return to_g(p);
        }
    };
    let mut outcomes: Vec<Outcome> = (0..pairs)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let (a, b) = (draw(&mut rng), draw(&mut rng));
            let out = Outcome::default().count("pairs");
            match (nu(&a), nu(&b), nu(&(&a * &b))) {
                (Ok(na), Ok(nb), Ok(nab)) if na + nb == nab => out,
                (na, nb, nab) => out.fail(Failure::new(
                    format!("nu(({a})({b}))"),
                    format!("{na:?} + {nb:?}"),
                    format!("{nab:?}"),
                )),
            }
        })
        .collect();
    outcomes.extend((0..4u8).map(|s| {
        let u = UnitPower::new(s).to_gaussian();
        let out = Outcome::default().count("units");
        match nu(&u) {
            Ok(0) => out,
            other => out.fail(Failure::new(format!("nu({u})"), 0, format!("{other:?}"))),
        }
    }));
    outcomes.extend(
        primes_up_to(prime_bound)
            .into_par_iter()
            .map(|p| {
                let mut out = Outcome::default().count("primes");
                for s in 0..4u8 {
                    let assoc = &UnitPower::new(s).to_gaussian() * &p;
                    match nu(&assoc) {
                        Ok(1) => {}
                        other => out = out.fail(Failure::new(format!("nu({assoc})"), 1, format!("{other:?}"))),
                    }
                }
                out
            })
            .collect::<Vec<_>>(),
    );
    merge(report, outcomes, start)
}

/// The four named restrictions produce their quoted forms, and each form
/// represents every `n` in `1..=bound`.
pub fn ramanujan_sweep(bound: u64) -> SweepReport {
    let start = Instant::now();
    let report = SweepReport::new("ramanujan").bound("bound", bound);
    let outcomes = RestrictionSpec::PRESETS
        .iter()
        .map(|name| {
            let spec = RestrictionSpec::preset(name).expect("preset");
            let out = Outcome::default();
            let form = match restrict(&spec) {
                Ok(f) => f,
                Err(e) => return out.fail(Failure::new(name, name, e)),
            };
            let coeffs: String = form.coeffs.iter().map(u64::to_string).collect();
            let mut out = if coeffs != *name {
                out.fail(Failure::new(&spec, name, form))
            } else {
                out
            };
            if let Some(miss) = represents_all_up_to(&form, bound) {
                out = out.fail(Failure::new(form, "all of 1..=bound", format!("misses {miss}")));
            }
            out.count("forms")
        })
        .collect();
    merge(report, outcomes, start)
}

/// The sweeps reachable by name, with their default bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepKind {
    Universality,
    Residue,
    Composition,
    Niven,
    Descent,
    ClassC,
    Nu,
    Ramanujan,
}

impl SweepKind {
    pub const ALL: [SweepKind; 8] = [
        SweepKind::Composition,
        SweepKind::Descent,
        SweepKind::Residue,
        SweepKind::Niven,
        SweepKind::ClassC,
        SweepKind::Universality,
        SweepKind::Nu,
        SweepKind::Ramanujan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepKind::Universality => "universality",
            SweepKind::Residue => "lemma1",
            SweepKind::Composition => "composition",
            SweepKind::Niven => "niven",
            SweepKind::Descent => "descent",
            SweepKind::ClassC => "class-c",
            SweepKind::Nu => "nu",
            SweepKind::Ramanujan => "ramanujan",
        }
    }

    /// What `bound` means for this sweep, and its default.
    pub fn default_bound(self) -> u64 {
        match self {
            SweepKind::Universality => 2000,
            SweepKind::Residue => 10_000,
            SweepKind::Composition => 10_000,
            SweepKind::Niven => 30,
            SweepKind::Descent => 100_000,
            SweepKind::ClassC => 10_000,
            SweepKind::Nu => 10_000,
            SweepKind::Ramanujan => 10_000,
        }
    }

    /// Run on the current rayon pool.
    pub fn run(self, bound: u64, seed: u64) -> SweepReport {
        match self {
            SweepKind::Universality => universality_sweep(bound),
            SweepKind::Residue => residue_sweep(bound),
            SweepKind::Composition => verify_composition_random(bound, 50, seed, None),
            SweepKind::Niven => niven_sweep(bound as i64),
            SweepKind::Descent => descent_sweep(bound, 1000.min(bound)),
            SweepKind::ClassC => class_c_sweep(bound),
            SweepKind::Nu => nu_sweep(bound, 1_000_000, 10_000, seed),
            SweepKind::Ramanujan => ramanujan_sweep(bound),
        }
    }
}

impl fmt::Display for SweepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SweepKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::parse(s, 0, "unknown sweep"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn binary_oracle_examples() {
        let (x, y) = brute_force_binary(&g(3, 0), 9).unwrap().unwrap();
        assert_eq!(binary_value(&x, &y), g(3, 0));
        // scan order puts -1 ahead of 1
        assert_eq!(brute_force_binary(&g(1, 1), 2).unwrap(), Some((g(-1, 0), g(-1, 0))));
        assert_eq!(brute_force_binary(&g(2, 1), 25).unwrap(), None);
        assert!(matches!(brute_force_binary(&g(3, 0), 8), Err(Error::Precondition(_))));
    }

    #[test]
    fn quat_oracle_examples() {
        let r = brute_force_quat(&g(2, 1), 5).unwrap().unwrap();
        assert_eq!(evaluate(&r), g(2, 1));
        assert_eq!(
            brute_force_quat(&g(0, 0), 1).unwrap().unwrap().parts(),
            [g(0, 0), g(0, 0), g(0, 0), g(0, 0)]
        );
        let r = brute_force_quat(&g(1, 3), 10).unwrap().unwrap();
        assert_eq!(evaluate(&r), g(1, 3));
    }

    #[test]
    fn two_squares_oracle_examples() {
        assert_eq!(brute_force_two_squares(2, 1, 100).unwrap(), None);
        let (x, y) = brute_force_two_squares(1, -1, 10).unwrap().unwrap();
        assert_eq!(x.square() + y.square(), g(1, -2));
        assert_eq!(brute_force_two_squares(0, 0, 1).unwrap(), Some((g(0, 0), g(0, 0))));
    }

    #[test]
    fn oracle_absence_for_class_c_binary_targets() {
        for p in primes_up_to(1000) {
            if classify(&p).unwrap() == PrimeClass::C {
                let n = p.norm().to_u64().unwrap();
                assert_eq!(brute_force_binary(&p, n).unwrap(), None, "{p}");
            }
        }
    }

    #[test]
    fn oracle_and_descent_agree() {
        for p in primes_up_to(400) {
            if classify(&p).unwrap() == PrimeClass::C {
                continue;
            }
            let n = p.norm().to_u64().unwrap();
            let (ox, oy) = brute_force_binary(&p, n).unwrap().expect("oracle witness");
            assert_eq!(binary_value(&ox, &oy), p);
            let (x, y) = descend(&p).unwrap();
            assert_eq!(binary_value(&x, &y), p);
        }
    }

    #[test]
    fn composition_sweep_examples() {
        let r = verify_composition_random(10_000, 50, 0, None);
        assert!(r.passed, "{:?}", r.failures.first());
        assert_eq!(r.instances_checked, 10_000);

        let r = verify_composition_random(1, 0, 0, None);
        assert!(r.passed);

        let r = verify_composition_random(1000, 5, 0, Some(&CompositionCoefficients::gaussian_form()));
        assert!(r.passed);
    }

    #[test]
    fn universality_sweep_small() {
        let r = universality_sweep(1);
        assert!(r.passed);
        assert_eq!(r.instances_checked, 5);
        assert_eq!(r.counts.get("units"), Some(&4));

        let r = universality_sweep(5);
        assert!(r.passed);
        assert_eq!(r.instances_checked, 21);
        assert!(r.counts["classC"] >= 8); // ±2±i, ±1±2i
    }

    #[test]
    fn residue_sweep_small() {
        let r = residue_sweep(2);
        assert!(r.passed);
        assert_eq!(r.instances_checked, 1);
        assert_eq!(r.counts.get("classB"), Some(&1));

        let r = residue_sweep(25);
        assert!(r.passed, "{:?}", r.failures);
        // norms 2 (B); 5, 5, 13, 13 (C); 9, 17, 17 (A)
        assert_eq!(r.counts["classA"], 3);
        assert_eq!(r.counts["classB"], 1);
        assert_eq!(r.counts["classC"], 4);
    }

    #[test]
    fn sweeps_are_worker_independent() {
        for kind in [SweepKind::Composition, SweepKind::Universality, SweepKind::Nu] {
            let one = with_workers(1, || kind.run(200, 7)).to_json();
            let four = with_workers(4, || kind.run(200, 7)).to_json();
            assert_eq!(one, four, "{kind}");
        }
    }

    #[test]
    fn sweep_kind_names() {
        for k in SweepKind::ALL {
            assert_eq!(k.name().parse::<SweepKind>().unwrap(), k);
        }
        assert!("bogus".parse::<SweepKind>().is_err());
    }
}
