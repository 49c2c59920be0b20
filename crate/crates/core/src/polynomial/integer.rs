//! Integer polynomial arithmetic: content, gcd, square-free decomposition, reductions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::dense::Poly;
use super::fp::FpPoly;
use super::{IntPolynomial, RatPolynomial};

pub fn ip(c: &[i64]) -> IntPolynomial {
    Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

/// Nonnegative gcd of the coefficients.
pub fn content(f: &IntPolynomial) -> BigInt {
    f.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// `f / content(f)` with positive leading coefficient.
pub fn primitive_part(f: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() {
        return f.clone();
    }
    let mut c = content(f);
    if f.lc().is_negative() {
        c = -c;
    }
    f.map(|a| a / &c)
}

/// Signed content such that `f = content * primitive_part(f)`.
pub fn signed_content(f: &IntPolynomial) -> BigInt {
    let c = content(f);
    if f.lc().is_negative() {
        -c
    } else {
        c
    }
}

pub fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo-division by zero");
    let mut r = a.clone();
    let lb = b.lc();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.lc();
        let shift = Poly::monomial(lr, dr - db);
        r = r.scale(&lb) - &shift * b;
    }
    r
}

/// Primitive gcd with positive leading coefficient.
pub fn gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return primitive_part(b);
    }
    if b.is_zero() {
        return primitive_part(a);
    }
    let (mut x, mut y) = if a.deg0() >= b.deg0() {
        (primitive_part(a), primitive_part(b))
    } else {
        (primitive_part(b), primitive_part(a))
    };
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { primitive_part(&r) };
    }
    primitive_part(&x)
}

/// Yun's algorithm on the primitive part: `pp(f) = prod A_i^i`.
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let a = primitive_part(f);
    let mut out = Vec::new();
    if a.deg0() == 0 {
        return out;
    }
    let b = a.derivative();
    let c = gcd(&a, &b);
    let mut w = a.div_exact_poly(&c).expect("gcd divides");
    let mut y = b.div_exact_poly(&c).expect("gcd divides derivative");
    let mut z = y - w.derivative();
    let mut i = 1;
    while w.deg0() > 0 {
        let g = gcd(&w, &z);
        if g.deg0() > 0 {
            out.push((g.clone(), i));
        }
        w = w.div_exact_poly(&g).expect("exact");
        y = z.div_exact_poly(&g).expect("exact");
        z = y - w.derivative();
        i += 1;
    }
    out
}

pub fn is_squarefree(f: &IntPolynomial) -> bool {
    f.deg0() == 0 || gcd(f, &f.derivative()).deg0() == 0
}

pub fn reduce_mod(f: &IntPolynomial, p: u64) -> FpPoly {
    FpPoly::from_bigints(p, f.coeffs())
}

pub fn to_rational(f: &IntPolynomial) -> RatPolynomial {
    f.map(|c| BigRational::from_integer(c.clone()))
}

/// Clears denominators; the result is primitive with positive leading coefficient.
pub fn from_rational(f: &RatPolynomial) -> IntPolynomial {
    let l = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    primitive_part(&f.map(|c| (c * BigRational::from_integer(l.clone())).to_integer()))
}

/// Homogeneous evaluation `sum a_i u^i v^(deg - i)` for a formal degree `deg`.
pub fn eval_hom(f: &IntPolynomial, u: &BigInt, v: &BigInt, deg: usize) -> BigInt {
    let mut acc = BigInt::zero();
    let mut upow = BigInt::one();
    let mut vp = vec![BigInt::one(); deg + 1];
    for k in 1..=deg {
        vp[k] = &vp[k - 1] * v;
    }
    for i in 0..=deg {
        let a = f.coeff(i);
        if !a.is_zero() {
            acc += a * &upow * &vp[deg - i];
        }
        upow *= u;
    }
    acc
}

pub fn eval_rational(f: &IntPolynomial, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in f.coeffs().iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Every root multiplicity, from the square-free decomposition.
pub fn max_root_multiplicity(f: &IntPolynomial) -> u32 {
    squarefree_decomposition(f).iter().map(|(_, k)| *k).max().unwrap_or(0)
}

/// Rational roots of `f` with multiplicity, via the linear factors of its factorization.
pub fn rational_roots(f: &IntPolynomial) -> Vec<(BigRational, u32)> {
    let mut out = Vec::new();
    for (g, k) in squarefree_decomposition(f) {
        for r in linear_roots_squarefree(&g) {
            out.push((r, k));
        }
    }
    out.sort();
    out
}

/// Rational roots of a squarefree primitive polynomial, read off its linear factors.
fn linear_roots_squarefree(g: &IntPolynomial) -> Vec<BigRational> {
    super::factor::factor_squarefree_primitive(g)
        .into_iter()
        .filter(|h| h.deg0() == 1)
        .map(|h| BigRational::new(-h.coeff(0), h.coeff(1)))
        .collect()
}

pub fn has_rational_root(f: &IntPolynomial) -> bool {
    !rational_roots(f).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_content() {
        let a = ip(&[-2, 0, 2]); // 2(x-1)(x+1)
        let b = ip(&[3, -3]); // -3(x-1)
        assert_eq!(gcd(&a, &b), ip(&[-1, 1]));
        assert_eq!(content(&a), BigInt::from(2));
        assert_eq!(primitive_part(&ip(&[3, -6])), ip(&[-1, 2]));
        assert_eq!(signed_content(&ip(&[3, -6])), BigInt::from(-3));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)^2 x
        let f = ip(&[-1, 1]).pow(3) * ip(&[2, 1]).pow(2) * ip(&[0, 1]);
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(ip(&[0, 1]), 1), (ip(&[2, 1]), 2), (ip(&[-1, 1]), 3)]);
        let back = d.iter().fold(IntPolynomial::one(), |acc, (g, k)| acc * g.pow(*k));
        assert_eq!(back, f);
    }

    #[test]
    fn homogeneous_evaluation() {
        let f = ip(&[-2, 0, 1]);
        assert_eq!(eval_hom(&f, &BigInt::from(3), &BigInt::from(1), 2), BigInt::from(7));
        assert_eq!(eval_hom(&f, &BigInt::from(1), &BigInt::from(3), 2), BigInt::from(-17));
        assert_eq!(eval_hom(&f, &BigInt::from(1), &BigInt::from(0), 3), BigInt::from(0));
    }

    #[test]
    fn rational_roots_found() {
        let f = ip(&[0, 0, -27, -4]);
        let r = rational_roots(&f);
        assert_eq!(r.len(), 2);
        assert_eq!(r[0], (BigRational::new((-27).into(), 4.into()), 1));
        assert_eq!(r[1], (BigRational::zero(), 2));
    }
}
