//! Discriminants of cubic fields `Q[x]/(g)` and of their Galois closures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factorize, fundamental_discriminant, squarefree_part, valuation};
use crate::polynomial::{discriminant, is_irreducible, IntPolynomial};

/// Discriminant of the cubic field cut out by a monic irreducible integer cubic.
pub fn cubic_field_discriminant(g: &IntPolynomial) -> Result<BigInt> {
    if g.degree() != Some(3) {
        return Err(Error::InvalidArgument("cubic_field_discriminant needs degree 3".into()));
    }
    if !g.lc().is_one() {
        return Err(Error::NonMonic);
    }
    if !is_irreducible(g)? {
        return Err(Error::InvalidArgument("cubic is reducible over Q".into()));
    }
    let g = &reduce_scaling(g);
    let disc = discriminant(g);
    let mut d_k = disc.clone();
    for (p, k) in factorize(&disc) {
        if k < 2 {
            continue;
        }
        let ip = if p <= BigInt::from(3) { index_valuation_small(g, p.to_u64().unwrap()) } else { index_valuation_tame(g, &p, k) };
        for _ in 0..2 * ip {
            d_k /= &p;
        }
    }
    Ok(d_k)
}

/// `v_p(d_K)` for `p >= 5`, read off from the Newton polygon of the depressed cubic.
fn tame_disc_valuation(g: &IntPolynomial, p: &BigInt) -> u32 {
    let (a2, a1, a0) = (g.coeff(2), g.coeff(1), g.coeff(0));
    // W = 3x + a2 turns g into W^3 + A W + B
    let mut a = BigInt::from(9) * &a1 - BigInt::from(3) * &a2 * &a2;
    let mut b = BigInt::from(2) * &a2 * &a2 * &a2 - BigInt::from(9) * &a1 * &a2 + BigInt::from(27) * &a0;
    let v = |x: &BigInt| if x.is_zero() { u32::MAX } else { valuation(p, x).unwrap() };
    let p2 = p * p;
    let p3 = &p2 * p;
    while v(&a) >= 2 && v(&b) >= 3 {
        a /= &p2;
        b /= &p3;
    }
    let (va, vb) = (v(&a), v(&b));
    if va == 0 || vb == 0 {
        let d = -BigInt::from(4) * &a * &a * &a - BigInt::from(27) * &b * &b;
        return v(&d) % 2;
    }
    if 3 * va as u64 >= 2 * vb as u64 {
        2
    } else {
        1
    }
}

fn index_valuation_tame(g: &IntPolynomial, p: &BigInt, vdisc: u32) -> u32 {
    let vk = tame_disc_valuation(g, p);
    debug_assert!(vdisc >= vk && (vdisc - vk) % 2 == 0);
    (vdisc - vk) / 2
}

type Row = [BigInt; 3];

type Mat = [[BigInt; 3]; 3];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let mut out: Mat = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| &x[i][k] * &y[k][j]).sum();
        }
    }
    out
}

/// Multiplication by `a` and `a^2` on the power basis of `Z[a]`.
fn companion_powers(g: &IntPolynomial) -> (Mat, Mat) {
    let z = BigInt::zero;
    let comp: Mat = [[z(), BigInt::one(), z()], [z(), z(), BigInt::one()], [-g.coeff(0), -g.coeff(1), -g.coeff(2)]];
    let comp2 = mat_mul(&comp, &comp);
    (comp, comp2)
}

/// Whether `(n0 + n1 a + n2 a^2) / den` is an algebraic integer.
fn is_integral(powers: &(Mat, Mat), num: &Row, den: &BigInt) -> bool {
    let (comp, comp2) = powers;
    let mut m: Mat = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { num[0].clone() } else { BigInt::zero() };
            m[i][j] = id + &num[1] * &comp[i][j] + &num[2] * &comp2[i][j];
        }
    }
    let tr = &m[0][0] + &m[1][1] + &m[2][2];
    if !(&tr % den).is_zero() {
        return false;
    }
    let minor = |i: usize, j: usize| &m[i][i] * &m[j][j] - &m[i][j] * &m[j][i];
    let s2 = minor(0, 1) + minor(0, 2) + minor(1, 2);
    let den2 = den * den;
    if !(&s2 % &den2).is_zero() {
        return false;
    }
    let det = &m[0][0] * minor(1, 2) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0]);
    (&det % (den2 * den)).is_zero()
}

/// Undo substitutions `x = p y` that keep the cubic monic and integral.
fn reduce_scaling(g: &IntPolynomial) -> IntPolynomial {
    let (mut a, mut b, mut c) = (g.coeff(2), g.coeff(1), g.coeff(0));
    let common = a.gcd(&b).gcd(&c);
    if common.is_zero() || common.is_one() {
        return g.clone();
    }
    for (p, _) in factorize(&common) {
        let (p2, p3) = (&p * &p, &p * &p * &p);
        while (&a % &p).is_zero() && (&b % &p2).is_zero() && (&c % &p3).is_zero() {
            a /= &p;
            b /= &p2;
            c /= &p3;
        }
    }
    IntPolynomial::new(vec![c, b, a, BigInt::one()])
}

/// Row-style Hermite reduction of a full-rank lattice in Z^3.
fn hnf(mut rows: Vec<Row>) -> [Row; 3] {
    let mut out: Vec<Row> = Vec::with_capacity(3);
    for col in 0..3 {
        loop {
            let pivot = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|a, b| a.1[col].abs().cmp(&b.1[col].abs()))
                .map(|(i, _)| i);
            let Some(i) = pivot else { break };
            let pr = rows.swap_remove(i);
            let mut done = true;
            for r in rows.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&pr[col]);
                for k in 0..3 {
                    r[k] -= &q * &pr[k];
                }
                if !r[col].is_zero() {
                    done = false;
                }
            }
            if done {
                out.push(pr);
                break;
            }
            rows.push(pr);
        }
    }
    assert_eq!(out.len(), 3, "lattice is not of full rank");
    [out[0].clone(), out[1].clone(), out[2].clone()]
}

/// `v_p([O_K : Z[a]])` by repeatedly adjoining the integral elements of `(1/p) O`.
fn index_valuation_small(g: &IntPolynomial, p: u64) -> u32 {
    let pb = BigInt::from(p);
    let z = BigInt::zero;
    let mut basis: [Row; 3] = [[BigInt::one(), z(), z()], [z(), BigInt::one(), z()], [z(), z(), BigInt::one()]];
    let mut den = BigInt::one();
    let mut total = 0;
    let powers = companion_powers(g);
    loop {
        let new_den = &den * &pb;
        let mut found: Vec<Row> = Vec::new();
        for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    if c0 == 0 && c1 == 0 && c2 == 0 {
                        continue;
                    }
                    let cs = [c0, c1, c2].map(BigInt::from);
                    let num: Row = [0, 1, 2].map(|k| (0..3).map(|i| &cs[i] * &basis[i][k]).sum());
                    if is_integral(&powers, &num, &new_den) {
                        found.push(num);
                    }
                }
            }
        }
        if found.is_empty() {
            return total;
        }
        let mut count = found.len() as u64 + 1;
        while count > 1 {
            debug_assert_eq!(count % p, 0);
            count /= p;
            total += 1;
        }
        let mut rows: Vec<Row> = basis.iter().map(|r| r.clone().map(|x| x * &pb)).collect();
        rows.extend(found);
        basis = hnf(rows);
        den = new_den;
        let common = basis.iter().flatten().fold(den.clone(), |acc, x| acc.gcd(x));
        if !common.is_one() {
            for r in basis.iter_mut() {
                for x in r.iter_mut() {
                    *x /= &common;
                }
            }
            den /= &common;
        }
    }
}

/// Discriminant of the Galois closure of a cubic field with discriminant `d_k`.
///
/// A cyclic cubic is its own closure. Otherwise the closure is a sextic with
/// `|d| = |d_quad| * d_k^2` and the sign of `d_k`.
pub fn s3_sextic_discriminant(d_k: &BigInt) -> BigInt {
    let m = squarefree_part(d_k).expect("cubic discriminant is nonzero");
    if m.is_one() {
        return d_k.clone();
    }
    let dq = fundamental_discriminant(&m);
    let mag = dq.abs() * d_k * d_k;
    if d_k.is_negative() {
        -mag
    } else {
        mag
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::factor_mod_p;
    use crate::polynomial::integer::{ip, reduce_mod};
    use crate::polynomial::FpPoly;
    use proptest::prelude::*;

    fn dk(c: &[i64]) -> i64 {
        cubic_field_discriminant(&ip(c)).unwrap().to_i64().unwrap()
    }

    #[test]
    fn monogenic_cases() {
        assert_eq!(dk(&[1, 1, 0, 1]), -31);
        assert_eq!(dk(&[1, -3, 0, 1]), 81);
        assert_eq!(dk(&[-2, 0, 0, 1]), -108);
    }

    #[test]
    fn pure_cubics() {
        // Q(cbrt(m)), m = a b^2: -27 (ab)^2 unless m^2 = 1 mod 9, then -3 (ab)^2
        assert_eq!(dk(&[-12, 0, 0, 1]), -972);
        assert_eq!(dk(&[-10, 0, 0, 1]), -300);
        assert_eq!(dk(&[-28, 0, 0, 1]), -3 * 14 * 14);
        assert_eq!(dk(&[-20, 0, 0, 1]), -27 * 100);
        assert_eq!(dk(&[-175, 0, 0, 1]), -27 * 35 * 35);
    }

    #[test]
    fn common_index_divisor() {
        // x^3 - x^2 - 2x - 8: every element of Z[a] has even index
        assert_eq!(dk(&[-8, -2, -1, 1]), -503);
    }

    #[test]
    fn tame_index() {
        // a = 5 b with b^3 = 2: disc 5^6 * (-108)
        assert_eq!(dk(&[-250, 0, 0, 1]), -108);
        // a = 7 b with b^3 + b + 1 = 0
        assert_eq!(dk(&[343, 49, 0, 1]), -31);
    }

    #[test]
    fn sextic_closure() {
        assert_eq!(s3_sextic_discriminant(&BigInt::from(-31)), BigInt::from(-29791));
        assert_eq!(s3_sextic_discriminant(&BigInt::from(81)), BigInt::from(81));
        assert_eq!(s3_sextic_discriminant(&BigInt::from(-108)), BigInt::from(-3 * 108 * 108));
        assert_eq!(s3_sextic_discriminant(&BigInt::from(-972)), BigInt::from(-3i64 * 972 * 972));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(cubic_field_discriminant(&ip(&[-1, 0, 0, 1])).is_err());
        assert_eq!(cubic_field_discriminant(&ip(&[1, 0, 0, 2])), Err(Error::NonMonic));
    }

    fn lift(f: &FpPoly) -> IntPolynomial {
        IntPolynomial::new(f.c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Dedekind: `p` does not divide the index of `Z[a]` iff gcd(F, g1, h) = 1 mod p.
    fn dedekind_p_maximal(g: &IntPolynomial, p: u64) -> bool {
        let fac = factor_mod_p(g, p, 0).unwrap();
        let g1 = fac.iter().fold(FpPoly::one(p), |acc, (f, _)| acc.mul(f));
        let h = reduce_mod(g, p).div_exact(&g1);
        let prod = lift(&g1) * lift(&h);
        let diff = g.clone() - prod;
        let f = IntPolynomial::new(diff.coeffs().iter().map(|c| c / BigInt::from(p)).collect());
        let t = reduce_mod(&f, p).gcd(&g1).gcd(&h);
        t.deg0() == 0 && !t.is_zero()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn agrees_with_dedekind(a in -30i64..30, b in -30i64..30, c in -60i64..60) {
            let g = ip(&[c, b, a, 1]);
            prop_assume!(is_irreducible(&g).unwrap());
            let disc = discriminant(&g);
            let d = cubic_field_discriminant(&g).unwrap();
            prop_assert!((&disc % &d).is_zero());
            let sq = &disc / &d;
            prop_assert!(sq.is_positive());
            prop_assert!(crate::exactmath::exact_root(&sq, 2).is_some());
            for p in [2u64, 3, 5, 7, 11, 13] {
                let pb = BigInt::from(p);
                let vd = valuation(&pb, &disc).unwrap();
                let vk = valuation(&pb, &d).unwrap();
                prop_assert!(vk <= 2 || p <= 3);
                prop_assert_eq!(dedekind_p_maximal(&g, p), vd == vk, "p = {}", p);
            }
            prop_assert!(d.signum() == disc.signum());
            prop_assert!(d.mod_floor(&BigInt::from(4)) <= BigInt::one());
        }
    }
}
