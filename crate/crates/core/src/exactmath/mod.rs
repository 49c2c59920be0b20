//! Integer arithmetic primitives: valuations, radicals, n-free parts, residue symbols.

mod factor;
pub mod primes;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub use factor::{factorize, is_prime, is_probable_prime, prime_divisors};

/// `B_m` data of a nonzero integer: the product of primes dividing it exactly `m` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationProfile {
    pub value: BigInt,
    pub q0: u32,
    pub bm: BTreeMap<u32, BigInt>,
    pub b_ge_q0: BigInt,
}

impl ValuationProfile {
    pub fn radical(&self) -> BigInt {
        self.bm.values().fold(BigInt::one(), |acc, b| acc * b)
    }
}

pub fn valuation(p: &BigInt, n: &BigInt) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if p <= &BigInt::one() {
        return Err(Error::NotPrime(p.to_string()));
    }
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return Ok(k);
        }
        m = q;
        k += 1;
    }
}

/// `v_p` on a machine prime, for hot paths.
pub fn valuation_u64(p: u64, n: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut k = 0;
    let mut m = n.clone();
    let pb = BigInt::from(p);
    loop {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            return k;
        }
        m = q;
        k += 1;
    }
}

pub fn radical(n: &BigInt) -> Result<BigInt> {
    if n.is_zero() {
        return Err(Error::ZeroInput("radical"));
    }
    Ok(factorize(n).into_iter().fold(BigInt::one(), |acc, (p, _)| acc * p))
}

/// Splits `n = core * cofactor^k` with `core` k-free and carrying the sign of `n`.
pub fn nfree_part(n: &BigInt, k: u32) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Err(Error::ZeroInput("nfree_part"));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k = {k} < 2")));
    }
    let mut core = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut cof = BigInt::one();
    for (p, e) in factorize(n) {
        core *= num_traits::pow(p.clone(), (e % k) as usize);
        cof *= num_traits::pow(p, (e / k) as usize);
    }
    Ok((core, cof))
}

/// Signed squarefree kernel.
pub fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    nfree_part(n, 2).map(|(c, _)| c)
}

pub fn is_nfree(n: &BigInt, k: u32) -> bool {
    if n.is_zero() || n.is_one() {
        return false;
    }
    factorize(n).iter().all(|(_, e)| *e < k)
}

/// All k-free integers `d` with `|d| <= x`, both signs, ascending.
pub fn nfree_sieve(k: u32, x: u64) -> Vec<i64> {
    let ok = nfree_flags(k, x);
    let mut out = Vec::with_capacity(2 * x as usize);
    for m in (1..=x).rev() {
        if ok[m as usize] {
            out.push(-(m as i64));
        }
    }
    for m in 2..=x {
        if ok[m as usize] {
            out.push(m as i64);
        }
    }
    out
}

/// `flags[m]` is true iff the positive integer `m` has no k-th prime power divisor.
pub fn nfree_flags(k: u32, x: u64) -> Vec<bool> {
    let mut ok = vec![true; x as usize + 1];
    ok[0] = false;
    for p in primes::primes_up_to((x as f64).powf(1.0 / k as f64).ceil() as u64 + 1) {
        let Some(pk) = p.checked_pow(k) else { break };
        if pk > x {
            break;
        }
        let mut j = pk;
        while j <= x {
            ok[j as usize] = false;
            j += pk;
        }
    }
    ok
}

pub fn bm_decomposition(value: &BigInt, q0: u32) -> Result<ValuationProfile> {
    if value.is_zero() {
        return Err(Error::ZeroInput("bm_decomposition"));
    }
    let mut bm: BTreeMap<u32, BigInt> = BTreeMap::new();
    for (p, e) in factorize(value) {
        *bm.entry(e).or_insert_with(BigInt::one) *= p;
    }
    let b_ge_q0 = bm
        .iter()
        .filter(|(m, _)| **m >= q0)
        .fold(BigInt::one(), |acc, (_, b)| acc * b);
    let prof = ValuationProfile { value: value.clone(), q0, bm, b_ge_q0 };
    // rad <= |value| / B_{>=q0}^{q0-1}
    let rad = prof.radical();
    let bound_den = num_traits::pow(prof.b_ge_q0.clone(), q0.saturating_sub(1) as usize);
    assert!(
        &rad * &bound_den <= value.abs(),
        "radical bound violated for {value}"
    );
    Ok(prof)
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: &BigInt) -> Result<i32> {
    if p <= &BigInt::from(2) || p.is_even() {
        return Err(Error::NotPrime(format!("{p} (odd prime required)")));
    }
    let r = a.mod_floor(p);
    if r.is_zero() {
        return Ok(0);
    }
    let e = (p - 1u32) >> 1;
    let t = r.modpow(&e, p);
    Ok(if t.is_one() { 1 } else { -1 })
}

pub fn legendre_u64(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if p == 2 {
        return 1;
    }
    if primes::pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Whether `a^((p-1)/q) = 1 mod p`; requires `p = 1 mod q`.
pub fn is_qth_power_mod(a: &BigInt, p: &BigInt, q: u64) -> Result<bool> {
    let pm1: BigInt = p - 1u32;
    if q == 0 || !(&pm1 % q).is_zero() {
        return Err(Error::IncompatibleResidueTest { p: p.to_string(), q });
    }
    let r = a.mod_floor(p);
    if r.is_zero() {
        return Ok(false);
    }
    let e = pm1 / q;
    Ok(r.modpow(&e, p).is_one())
}

/// Fundamental discriminant of `Q(sqrt(m))` for squarefree `m != 1`.
pub fn fundamental_discriminant(m: &BigInt) -> BigInt {
    if m.mod_floor(&BigInt::from(4)).is_one() {
        m.clone()
    } else {
        m * 4
    }
}

pub fn to_i64(n: &BigInt) -> Option<i64> {
    n.to_i64()
}

/// Integer k-th root test: returns `r` with `r^k = n` when it exists.
pub fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 0 {
            return None;
        }
        return exact_root(&-n, k).map(|r| -r);
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&b(2), &b(48)).unwrap(), 4);
        assert_eq!(valuation(&b(7), &b(10)).unwrap(), 0);
        assert_eq!(valuation(&b(3), &b(-162)).unwrap(), 4);
        assert_eq!(valuation(&b(3), &b(0)), Err(Error::ValuationOfZero));
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&b(720)).unwrap(), b(30));
        assert_eq!(radical(&b(-17)).unwrap(), b(17));
        assert_eq!(radical(&b(1)).unwrap(), b(1));
        assert!(radical(&b(0)).is_err());
    }

    #[test]
    fn nfree_parts() {
        assert_eq!(nfree_part(&b(12), 2).unwrap(), (b(3), b(2)));
        assert_eq!(nfree_part(&b(-17), 2).unwrap(), (b(-17), b(1)));
        assert_eq!(nfree_part(&b(48), 3).unwrap(), (b(6), b(2)));
        assert!(!is_nfree(&b(24), 3));
        assert!(is_nfree(&b(-1), 2));
        assert!(!is_nfree(&b(1), 2));
        assert!(is_nfree(&b(4), 3));
    }

    #[test]
    fn sieve_small() {
        assert_eq!(nfree_sieve(2, 5), vec![-5, -3, -2, -1, 2, 3, 5]);
        let s3 = nfree_sieve(3, 8);
        assert!(!s3.contains(&-8));
        assert!(s3.contains(&4));
    }

    #[test]
    fn sieve_matches_direct_check() {
        let s = nfree_sieve(2, 500);
        let direct: Vec<i64> = (-500i64..=500).filter(|&d| is_nfree(&b(d), 2)).collect();
        assert_eq!(s, direct);
    }

    #[test]
    fn bm_examples() {
        let p = bm_decomposition(&b(720), 2).unwrap();
        assert_eq!(p.bm[&1], b(5));
        assert_eq!(p.bm[&2], b(3));
        assert_eq!(p.bm[&4], b(2));
        assert_eq!(p.b_ge_q0, b(6));
        let p = bm_decomposition(&b(101), 3).unwrap();
        assert_eq!(p.bm[&1], b(101));
        assert_eq!(p.b_ge_q0, b(1));
        let p = bm_decomposition(&b(576), 3).unwrap();
        assert_eq!(p.bm[&2], b(3));
        assert_eq!(p.bm[&6], b(2));
        assert_eq!(p.b_ge_q0, b(2));
        assert_eq!(p.radical(), b(6));
    }

    #[test]
    fn residue_symbols() {
        assert_eq!(legendre(&b(2), &b(7)).unwrap(), 1);
        assert_eq!(legendre(&b(3), &b(5)).unwrap(), -1);
        assert_eq!(legendre(&b(10), &b(5)).unwrap(), 0);
        assert!(is_qth_power_mod(&b(8), &b(13), 3).unwrap());
        assert!(!is_qth_power_mod(&b(2), &b(13), 3).unwrap());
        assert!(matches!(
            is_qth_power_mod(&b(2), &b(11), 3),
            Err(Error::IncompatibleResidueTest { .. })
        ));
    }

    #[test]
    fn roots() {
        assert_eq!(exact_root(&b(-27), 3), Some(b(-3)));
        assert_eq!(exact_root(&b(-4), 2), None);
        assert_eq!(exact_root(&b(26), 2), None);
    }
}
