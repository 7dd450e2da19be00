//! Rational-integer number theory on `u64`: primality, factorization and a
//! sieve. Used to factor norms before lifting to Gaussian primes.

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin; this witness set is exact for all `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary size. Exact below 2^64; above, Miller–Rabin with
/// the first 20 prime bases (no known counterexample, but not proven).
pub fn is_prime_big(n: &num_bigint::BigUint) -> bool {
    use num_bigint::BigUint;
    use num_traits::{One, ToPrimitive};
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    if BASES.iter().any(|&p| (n % p).to_u32() == Some(0)) {
        return false;
    }
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'witness: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard rho. `n` must be odd and composite.
fn pollard_brent(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut x, mut ys);
        let m = 128;
        let mut g;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += m;
                if k >= r || g != 1 {
                    break;
                }
            }
            r *= 2;
            if g != 1 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factor(1)` is empty.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64(0)");
    let mut primes = Vec::new();
    let mut rest = n;
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// A square root of -1 modulo a prime `q ≡ 1 (mod 4)`.
pub fn sqrt_minus_one(q: u64) -> u64 {
    debug_assert!(q % 4 == 1 && is_prime_u64(q));
    // c^((q-1)/4) squares to -1 exactly when c is a non-residue.
    (2..q)
        .map(|c| pow_mod(c, (q - 1) / 4, q))
        .find(|&r| mul_mod(r, r, q) == q - 1)
        .expect("a quadratic non-residue exists")
}

/// All rational primes `≤ n`.
pub fn sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_sieve() {
        let primes = sieve(20_000);
        for n in 0..20_000u64 {
            assert_eq!(is_prime_u64(n), primes.binary_search(&n).is_ok(), "{n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
        assert!(!is_prime_u64(1_000_000_007 * 998_244_353));
    }

    #[test]
    fn factor_reconstructs() {
        for n in [
            1u64,
            2,
            60,
            1_000_000_007 * 998_244_353,
            999_999_999_989,
            1 << 40,
            600_851_475_143,
            u64::MAX,
        ] {
            let f = factor_u64(n);
            let prod: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(prod, n as u128);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
            assert!(f.windows(2).all(|w| w[0].0 < w[1].0));
        }
    }

    #[test]
    fn sqrt_minus_one_is_root() {
        for q in sieve(5000).into_iter().filter(|q| q % 4 == 1) {
            let r = sqrt_minus_one(q);
            assert_eq!(mul_mod(r, r, q), q - 1);
        }
    }
}
