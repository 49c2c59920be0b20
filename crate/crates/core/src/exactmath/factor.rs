//! Integer factorization: trial division, Miller-Rabin, Pollard-Brent rho.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{gcd_u64, is_prime_u64, mul_mod, small_primes};

const MR_ROUNDS: usize = 64;

/// Miller-Rabin with the first 64 primes as bases; deterministic below 2^64.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(s) = n.to_u64() {
        return is_prime_u64(s);
    }
    if n.is_even() {
        return false;
    }
    for &p in &small_primes()[..200] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &small_primes()[..MR_ROUNDS] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

pub fn is_prime(n: &BigInt) -> bool {
    match n.to_biguint() {
        Some(u) => is_probable_prime(&u),
        None => false,
    }
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..std::cmp::min(128, r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let d = rho_u64(n);
    split_u64(d, out);
    split_u64(n / d, out);
}

fn split_big(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(s) = n.to_u64() {
        let mut v = Vec::new();
        split_u64(s, &mut v);
        out.extend(v.into_iter().map(BigUint::from));
        return;
    }
    if is_probable_prime(&n) {
        out.push(n);
        return;
    }
    let d = rho_big(&n);
    let e = &n / &d;
    split_big(d, out);
    split_big(e, out);
}

/// Trial division bound before switching to Miller-Rabin and rho.
const QUICK_TRIAL: u64 = 1 << 12;

/// Factorization of |n| as sorted (prime, exponent) pairs; empty for |n| = 1.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut m = n.magnitude().clone();
    let mut found: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes().iter().take_while(|&&p| p < QUICK_TRIAL) {
        if let Some(s) = m.to_u64() {
            if p.saturating_mul(p) > s {
                break;
            }
        }
        if (&m % p).is_zero() {
            let mut k = 0;
            while (&m % p).is_zero() {
                m /= p;
                k += 1;
            }
            found.push((BigUint::from(p), k));
        }
    }
    if !m.is_one() {
        let mut parts = Vec::new();
        match m.to_u64() {
            Some(s) if s < QUICK_TRIAL * QUICK_TRIAL => parts.push(m),
            _ => split_big(m, &mut parts),
        }
        for p in parts {
            match found.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += 1,
                None => found.push((p, 1)),
            }
        }
    }
    found.sort();
    found.into_iter().map(|(p, k)| (BigInt::from(p), k)).collect()
}

/// Distinct prime divisors of |n|.
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(BigInt, u32)]) -> BigInt {
        f.iter().fold(BigInt::one(), |acc, (p, k)| acc * num_traits::pow(p.clone(), *k as usize))
    }

    #[test]
    fn small_values() {
        let f = factorize(&BigInt::from(720));
        assert_eq!(f, vec![(BigInt::from(2), 4), (BigInt::from(3), 2), (BigInt::from(5), 1)]);
        assert!(factorize(&BigInt::from(-1)).is_empty());
        assert_eq!(factorize(&BigInt::from(-17)), vec![(BigInt::from(17), 1)]);
    }

    #[test]
    fn semiprimes_beyond_trial_range() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigInt::from(998_244_353u64);
        let r = BigInt::from(2_305_843_009_213_693_951u64);
        let n = &p * &q * &r * BigInt::from(12);
        let f = factorize(&n);
        assert_eq!(product(&f), n);
        assert!(f.iter().all(|(p, _)| is_prime(p)));
        assert_eq!(f.len(), 5);
    }

    #[test]
    fn prime_square_above_limit() {
        let p = BigInt::from(1_000_003u64);
        let f = factorize(&(&p * &p));
        assert_eq!(f, vec![(p, 2)]);
    }
}
