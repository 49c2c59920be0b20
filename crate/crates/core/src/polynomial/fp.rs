//! Polynomials over F_p for word-sized p, with Cantor-Zassenhaus factorization.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::primes::{inv_mod, mul_mod};

/// Dense polynomial over F_p, low degree first, trimmed.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    pub c: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn from_bigints(p: u64, coeffs: &[BigInt]) -> Self {
        let pb = BigInt::from(p);
        Self::new(p, coeffs.iter().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect())
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, c: Vec::new() }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.c.iter().rev().fold(0, |acc, &a| (mul_mod(acc, x, p) + a) % p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let v = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0);
                let b = o.c.get(i).copied().unwrap_or(0);
                let s = a as u128 + b as u128;
                (s % self.p as u128) as u64
            })
            .collect();
        Self::new(self.p, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| if a == 0 { 0 } else { self.p - a }).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p;
        let mut v = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                v[i + j] = ((v[i + j] as u128 + a as u128 * b as u128) % p as u128) as u64;
            }
        }
        Self::new(p, v)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.c.iter().map(|&a| mul_mod(a, k, self.p)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p).expect("unit leading coefficient"))
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let p = self.p;
        let dd = d.degree().expect("division by zero polynomial");
        if self.c.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.lc(), p).expect("unit leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = mul_mod(r[i + dd], inv, p);
            q[i] = c;
            if c != 0 {
                for (j, &b) in d.c.iter().enumerate() {
                    let t = mul_mod(c, b, p);
                    r[i + j] = (r[i + j] + p - t) % p;
                }
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        Self::new(
            p,
            self.c.iter().enumerate().skip(1).map(|(i, &a)| mul_mod(a, i as u64 % p, p)).collect(),
        )
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(p), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = s0.sub(&q.mul(&s1));
            s0 = s1;
            s1 = s;
            let t = t0.sub(&q.mul(&t1));
            t0 = t1;
            t1 = t;
        }
        let inv = inv_mod(r0.lc(), p).unwrap();
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            result = result.mulmod(&result, m);
            if e.bit(i) {
                result = result.mulmod(&base, m);
            }
        }
        result
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Self {
        self.powmod(&BigUint::from(e), m)
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).deg0() == 0
    }

    /// Roots in F_p, sorted, without multiplicity.
    pub fn roots(&self) -> Vec<u64> {
        let p = self.p;
        if self.deg0() == 0 {
            return Vec::new();
        }
        if p <= 64 {
            return (0..p).filter(|&x| self.eval(x) == 0).collect();
        }
        let f = self.monic();
        let xp = Self::x(p).powmod_u64(p, &f);
        let g = xp.sub(&Self::x(p)).gcd(&f);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut out: Vec<u64> = equal_degree_split(&g, 1, &mut rng)
            .into_iter()
            .map(|l| (p - l.c[0]) % p)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn has_root(&self) -> bool {
        let p = self.p;
        if self.deg0() == 0 {
            return false;
        }
        if p <= 64 {
            return (0..p).any(|x| self.eval(x) == 0);
        }
        let f = self.monic();
        let xp = Self::x(p).powmod_u64(p, &f);
        xp.sub(&Self::x(p)).gcd(&f).deg0() > 0
    }
}

/// Square-free factorization of a monic polynomial: (factor, multiplicity).
pub fn squarefree_factorization(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    let f = f.monic();
    if f.deg0() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1u32;
    while w.deg0() > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y);
        if fac.deg0() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if c.deg0() > 0 {
        // c is a polynomial in x^p; its p-th root has coefficients c[p*k]
        let root = FpPoly::new(p, c.c.iter().step_by(p as usize).copied().collect());
        for (g, k) in squarefree_factorization(&root) {
            out.push((g, k * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
pub fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = FpPoly::x(p);
    let mut h = x.rem(&f);
    let mut d = 0;
    while f.deg0() >= 2 * (d + 1) {
        d += 1;
        h = h.powmod_u64(p, &f);
        let g = h.sub(&x).gcd(&f);
        if g.deg0() > 0 {
            f = f.div_exact(&g);
            h = h.rem(&f);
            out.push((g, d));
        }
    }
    if f.deg0() > 0 {
        let k = f.deg0();
        out.push((f, k));
    }
    out
}

fn random_poly(p: u64, below: usize, rng: &mut ChaCha8Rng) -> FpPoly {
    FpPoly::new(p, (0..below).map(|_| rng.gen_range(0..p)).collect())
}

/// Splits a monic product of distinct degree-`d` irreducibles.
pub fn equal_degree_split(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let p = f.p;
    let n = f.deg0();
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    loop {
        let a = random_poly(p, n, rng);
        if a.deg0() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^(2^(nd-1)) restricted to degree d blocks
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) >> 1;
            a.powmod(&e, f).sub(&FpPoly::one(p))
        };
        let g = b.gcd(f);
        if g.deg0() > 0 && g.deg0() < n {
            let h = f.div_exact(&g);
            let mut out = equal_degree_split(&g, d, rng);
            out.extend(equal_degree_split(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicity; sorted.
pub fn factor(f: &FpPoly, seed: u64) -> Vec<(FpPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, k) in squarefree_factorization(f) {
        for (block, d) in distinct_degree(&g) {
            for irr in equal_degree_split(&block, d, &mut rng) {
                out.push((irr, k));
            }
        }
    }
    out.sort_by(|a, b| (a.0.deg0(), &a.0.c, a.1).cmp(&(b.0.deg0(), &b.0.c, b.1)));
    out
}

/// Degrees of the irreducible factors of a squarefree polynomial, without splitting.
pub fn factor_degrees(f: &FpPoly) -> Vec<usize> {
    let mut v = Vec::new();
    for (g, d) in distinct_degree(f) {
        for _ in 0..g.deg0() / d {
            v.push(d);
        }
    }
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    #[test]
    fn small_factorizations() {
        let f = factor(&fp(5, &[1, 0, 1]), 1);
        assert_eq!(f, vec![(fp(5, &[2, 1]), 1), (fp(5, &[3, 1]), 1)]);
        let f = factor(&fp(7, &[1, 0, 1]), 1);
        assert_eq!(f, vec![(fp(7, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn repeated_factors_and_char_p_roots() {
        // x^3 - 2 = (x + 1)^3 mod 3
        let f = factor(&fp(3, &[1, 0, 0, 1]), 9);
        assert_eq!(f, vec![(fp(3, &[1, 1]), 3)]);
        // (x^2+1)^2 (x+1) mod 2 has (x+1)^5
        let f = factor(&fp(2, &[1, 1, 0, 0, 1, 1]), 2);
        let total: u32 = f.iter().map(|(g, k)| g.deg0() as u32 * k).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn cube_root_of_two_mod_31_matches_brute_force() {
        let f = fp(31, &[29, 0, 0, 1]);
        let roots: Vec<u64> = (0..31).filter(|&x| f.eval(x) == 0).collect();
        let fac = factor(&f, 3);
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.deg0()).collect();
        // 31 = 1 mod 3 and 2 = 4^3 mod 31, so x^3 - 2 splits
        assert_eq!(roots, vec![4, 7, 20]);
        assert_eq!(degs, vec![1, 1, 1]);
    }

    #[test]
    fn large_prime_roots() {
        let p = 1_000_000_007u64;
        // (x - 3)(x - 5)(x^2 + 1), and p = 3 mod 4
        let f = fp(p, &[15, p - 8, 1]).mul(&fp(p, &[1, 0, 1]));
        assert_eq!(f.roots(), vec![3, 5]);
        assert!(f.has_root());
        assert!(!fp(p, &[1, 0, 1]).has_root());
    }

    #[test]
    fn seeds_do_not_change_the_multiset() {
        let f = fp(101, &[7, 3, 0, 5, 1, 9, 1]);
        let a = factor(&f, 1);
        let b = factor(&f, 12345);
        assert_eq!(a, b);
    }
}
