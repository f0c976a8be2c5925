//! Integer helpers: primality, factorization of group orders, modular
//! arithmetic on `u128`.

use crate::error::{Error, Result};

/// Trial division bound used before switching to Pollard rho.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;
/// Iteration cap for a single Pollard rho run.
pub const RHO_ITERATION_CAP: u64 = 1 << 20;

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(a < m && b < m);
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let mut a = a % m;
    let mut b = b % m;
    let mut acc = 0u128;
    while b != 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp != 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn checked_pow(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

const MR_BASES: [u128; 20] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
];

/// Miller-Rabin with the first twenty primes as bases. Deterministic for
/// every `n < 3.3e24`, which covers all values this crate factors in practice.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &b in &MR_BASES {
        if n == b {
            return true;
        }
        if n.is_multiple_of(b) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
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

fn pollard_rho(n: u128, c: u128) -> Option<u128> {
    // Brent's variant with batched gcds.
    let f = |x: u128| add_mod(mul_mod(x, x, n), c % n, n);
    let mut y = 2u128 % n;
    let mut r = 1u64;
    let mut q = 1u128;
    let mut g = 1u128;
    let mut x = y;
    let mut ys = y;
    let mut iterations = 0u64;
    const BATCH: u64 = 64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += steps;
            iterations += steps;
            if iterations > RHO_ITERATION_CAP {
                return None;
            }
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g == n {
        None
    } else {
        Some(g)
    }
}

fn push_factor(out: &mut Vec<(u128, u32)>, p: u128, e: u32) {
    if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += e;
    } else {
        out.push((p, e));
    }
}

fn split_large(n: u128, out: &mut Vec<(u128, u32)>, original: u128) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime(n) {
        push_factor(out, n, 1);
        return Ok(());
    }
    for c in 1..=8u128 {
        if let Some(d) = pollard_rho(n, c) {
            split_large(d, out, original)?;
            split_large(n / d, out, original)?;
            return Ok(());
        }
    }
    Err(Error::FactorizationBudgetExceeded(original))
}

/// Prime factorization `[(p, e)]`, sorted by prime. Trial division up to
/// [`TRIAL_DIVISION_BOUND`], then Pollard rho with an iteration cap.
pub fn factorize(n: u128) -> Result<Vec<(u128, u32)>> {
    if n == 0 {
        return Err(Error::OutOfRange("cannot factor 0".into()));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut p: u128 = 2;
    while p <= TRIAL_DIVISION_BOUND as u128 && p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        if p * p > m {
            out.push((m, 1));
        } else {
            split_large(m, &mut out, n)?;
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Distinct prime divisors of a small integer.
pub fn prime_divisors(n: u128) -> Result<Vec<u128>> {
    Ok(factorize(n)?.into_iter().map(|(p, _)| p).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_prime(n: u128) -> bool {
        n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u128 {
            assert_eq!(is_prime(n), brute_prime(n), "n = {n}");
        }
        assert!(is_prime(2_147_483_647));
        assert!(is_prime((1u128 << 61) - 1));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn factorization_recomposes() {
        for n in [1u128, 2, 12, 624, 5u128.pow(16) - 1, 3u128.pow(40) - 1] {
            let f = factorize(n).unwrap();
            let back: u128 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
            assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }

    #[test]
    fn factors_semiprime_beyond_trial_bound() {
        let p = 1_000_000_007u128;
        let q = 998_244_353u128;
        assert_eq!(factorize(p * q).unwrap(), vec![(q, 1), (p, 1)]);
        let big = (1u128 << 61) - 1;
        assert_eq!(factorize(big * 3).unwrap(), vec![(3, 1), (big, 1)]);
    }

    #[test]
    fn mul_mod_wide_modulus() {
        let m = (1u128 << 127) - 1;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
        assert_eq!(pow_mod(2, 127, m), 1);
    }
}
