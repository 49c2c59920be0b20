//! Factorization over Q: square-free decomposition, modular factorization,
//! Hensel lifting and recombination of lifted factors.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::dense::Poly;
use super::fp::{self, FpPoly};
use super::integer::{primitive_part, reduce_mod, signed_content, squarefree_decomposition};
use super::IntPolynomial;
use crate::error::{Error, Result};
use crate::exactmath::primes::small_primes;

pub const DEGREE_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub content: BigInt,
    /// Primitive irreducible factors with positive leading coefficient.
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> IntPolynomial {
        self.factors
            .iter()
            .fold(Poly::constant(self.content.clone()), |acc, (g, k)| acc * g.pow(*k))
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1 && self.content.abs().is_one()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, k)| *k == 1)
    }
}

pub fn factor_over_q(f: &IntPolynomial) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput("factor_over_Q"));
    }
    let n = f.deg0();
    if n > DEGREE_CAP {
        return Err(Error::DegreeCapExceeded { degree: n, cap: DEGREE_CAP });
    }
    let content = signed_content(f);
    let mut factors = Vec::new();
    for (a, k) in squarefree_decomposition(f) {
        for g in factor_squarefree_primitive(&a) {
            factors.push((g, k));
        }
    }
    factors.sort_by(|a, b| (a.0.deg0(), &a.0, a.1).cmp(&(b.0.deg0(), &b.0, b.1)));
    Ok(Factorization { content, factors })
}

/// Whether `f` is irreducible over Q (constants are not).
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    if f.deg0() == 0 {
        return Ok(false);
    }
    let fac = factor_over_q(f)?;
    Ok(fac.factors.len() == 1 && fac.factors[0].1 == 1)
}

fn subset_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let next: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(next);
    }
    s
}

/// Irreducible factors of a primitive squarefree polynomial with positive leading coefficient.
pub(crate) fn factor_squarefree_primitive(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let f = primitive_part(f);
    let n = f.deg0();
    if n <= 1 {
        return if n == 1 { vec![f] } else { Vec::new() };
    }
    // x | f handled directly so the modular image keeps its structure
    if f.coeff(0).is_zero() {
        let rest = f.div_exact_poly(&Poly::x()).unwrap();
        let mut out = vec![Poly::x()];
        out.extend(factor_squarefree_primitive(&rest));
        return out;
    }
    let lc = f.lc();
    let mut best: Option<(u64, usize)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for &p in small_primes().iter().skip(1) {
        if (&lc % p).is_zero() {
            continue;
        }
        let fb = reduce_mod(&f, p);
        if fb.deg0() != n || !fb.is_squarefree() {
            continue;
        }
        let degs = fp::factor_degrees(&fb.monic());
        let sums = subset_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if allowed.as_ref().unwrap().iter().all(|&d| d == 0 || d == n) {
            return vec![f];
        }
        if best.map_or(true, |(_, c)| degs.len() < c) {
            best = Some((p, degs.len()));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, _) = best.expect("a good prime exists");
    let mod_factors: Vec<FpPoly> =
        fp::factor(&reduce_mod(&f, p).monic(), p).into_iter().map(|(g, _)| g).collect();
    recombine(&f, p, &mod_factors)
}

fn mignotte_lift_exponent(f: &IntPolynomial, p: u64) -> u32 {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1u32;
    let bound = BigInt::from(2) * f.lc().abs() * (BigInt::one() << f.deg0()) * norm;
    let pb = BigInt::from(p);
    let mut k = 1;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    k
}

fn lift_to_z(g: &FpPoly) -> IntPolynomial {
    Poly::new(g.c.iter().map(|&a| BigInt::from(a)).collect())
}

fn reduce_big(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    f.map(|c| c.mod_floor(m))
}

fn symmetric(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half: BigInt = m >> 1;
    f.map(|c| {
        let r = c.mod_floor(m);
        if r > half {
            r - m
        } else {
            r
        }
    })
}

/// Lifts `f = g0 * h0 mod p` (g0 monic, lc(h0) = lc(f) mod p) to a factorization mod p^k.
fn lift_pair(f: &IntPolynomial, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (IntPolynomial, IntPolynomial) {
    let (one, _, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one());
    let mut g = lift_to_z(g0);
    let mut hc = lift_to_z(h0).into_coeffs();
    let top = hc.len() - 1;
    hc[top] = f.lc();
    let mut h = Poly::new(hc);
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e = diff.map(|c| {
            debug_assert!((c % &pj).is_zero());
            c / &pj
        });
        let eb = reduce_mod(&e, p);
        let dg = eb.mul(&t).rem(g0);
        let dh = eb.sub(&dg.mul(h0)).div_exact(g0);
        g = g + lift_to_z(&dg).scale(&pj);
        h = h + lift_to_z(&dh).scale(&pj);
        pj *= &pb;
    }
    (reduce_big(&g, &pj), reduce_big(&h, &pj))
}

fn multi_lift(f: &IntPolynomial, facs: &[FpPoly], p: u64, k: u32) -> Vec<IntPolynomial> {
    let pk = BigInt::from(p).pow(k);
    if facs.len() == 1 {
        let inv = f.lc().modinv(&pk).expect("leading coefficient is a unit");
        return vec![reduce_big(&f.scale(&inv), &pk)];
    }
    let g0 = &facs[0];
    let lcp = reduce_mod(&Poly::constant(f.lc()), p);
    let h0 = facs[1..].iter().fold(lcp, |acc, q| acc.mul(q));
    let (g, h) = lift_pair(f, g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(multi_lift(&h, &facs[1..], p, k));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn recombine(f: &IntPolynomial, p: u64, mod_factors: &[FpPoly]) -> Vec<IntPolynomial> {
    if mod_factors.len() == 1 {
        return vec![f.clone()];
    }
    let k = mignotte_lift_exponent(f, p);
    let pk = BigInt::from(p).pow(k);
    let mut lifted = multi_lift(f, mod_factors, p, k);
    let mut rem = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut hit = None;
        let lcr = rem.lc();
        let target0 = &lcr * rem.coeff(0);
        for comb in combinations(lifted.len(), s) {
            let c0 = comb.iter().fold(lcr.clone(), |acc, &i| (acc * lifted[i].coeff(0)).mod_floor(&pk));
            let half: BigInt = &pk >> 1;
            let c0 = if c0 > half { c0 - &pk } else { c0 };
            if c0.is_zero() || !(&target0 % &c0).is_zero() {
                continue;
            }
            let prod = comb.iter().fold(Poly::constant(lcr.clone()), |acc, &i| {
                reduce_big(&(&acc * &lifted[i]), &pk)
            });
            let g = primitive_part(&symmetric(&prod, &pk));
            if let Some(q) = rem.div_exact_poly(&g) {
                hit = Some((comb, g, q));
                break;
            }
        }
        match hit {
            Some((comb, g, q)) => {
                out.push(g);
                rem = q;
                for &i in comb.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if rem.deg0() > 0 {
        out.push(primitive_part(&rem));
    }
    out
}

/// Degree pattern of `f mod p` as a sorted list, for squarefree reductions.
pub fn splitting_type(f: &IntPolynomial, p: u64) -> Option<Vec<usize>> {
    let fb = reduce_mod(f, p);
    if fb.deg0() != f.deg0() || !fb.is_squarefree() {
        return None;
    }
    Some(fp::factor_degrees(&fb.monic()))
}

/// Complete factorization modulo a prime, as monic factors with multiplicity.
pub fn factor_mod_p(f: &IntPolynomial, p: u64, seed: u64) -> Result<Vec<(FpPoly, u32)>> {
    if !crate::exactmath::primes::is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let fb = reduce_mod(f, p);
    if fb.is_zero() {
        return Err(Error::VanishingReduction(p));
    }
    if fb.deg0() == 0 {
        return Ok(Vec::new());
    }
    Ok(fp::factor(&fb.monic(), seed))
}

#[cfg(test)]
mod tests {
    use super::super::integer::ip;
    use super::*;

    #[test]
    fn examples() {
        let f = factor_over_q(&ip(&[-4, 0, 0, 0, 1])).unwrap();
        assert_eq!(f.factors, vec![(ip(&[-2, 0, 1]), 1), (ip(&[2, 0, 1]), 1)]);
        let f = factor_over_q(&ip(&[0, 0, -27, -4])).unwrap();
        assert_eq!(f.content, BigInt::from(-1));
        assert_eq!(f.factors, vec![(ip(&[0, 1]), 2), (ip(&[27, 4]), 1)]);
        assert!(factor_over_q(&ip(&[1, 1, 1])).unwrap().is_irreducible());
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 splits mod every prime but is irreducible
        let f = factor_over_q(&ip(&[1, 0, -10, 0, 1])).unwrap();
        assert!(f.is_irreducible());
        // times another quartic that splits modulo every prime
        let g = ip(&[1, 0, -10, 0, 1]) * ip(&[1, 0, 0, 0, 1]);
        let f = factor_over_q(&g).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.expand(), g);
    }

    #[test]
    fn non_monic_products() {
        let g = ip(&[3, 0, 5]) * ip(&[-7, 2]) * ip(&[1, 1, 0, 6]);
        let f = factor_over_q(&g).unwrap();
        assert_eq!(f.expand(), g);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn degree_cap() {
        let f = Poly::monomial(BigInt::one(), 25) + Poly::one();
        assert!(matches!(factor_over_q(&f), Err(Error::DegreeCapExceeded { .. })));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }
}
