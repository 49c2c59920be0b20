//! Binary forms and points of the projective line over Q.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::factor::is_irreducible;
use super::integer::{eval_hom, primitive_part};
use super::IntPolynomial;
use crate::error::{Error, Result};

/// `sum c_i U^i V^(d-i)`; `coeffs[i]` is the coefficient of `U^i V^(d-i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogPolynomial {
    degree: usize,
    coeffs: Vec<BigInt>,
}

impl HomogPolynomial {
    pub fn new(degree: usize, mut coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.len() <= degree + 1, "too many coefficients for the degree");
        coeffs.resize(degree + 1, BigInt::zero());
        HomogPolynomial { degree, coeffs }
    }

    /// Homogenization of `f` to total degree `degree >= deg f`.
    pub fn from_poly(f: &IntPolynomial, degree: usize) -> Self {
        assert!(f.deg0() <= degree);
        Self::new(degree, f.coeffs().to_vec())
    }

    /// The form `V`, attached to the point at infinity.
    pub fn infinity() -> Self {
        Self::new(1, vec![BigInt::one(), BigInt::zero()])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_infinity(&self) -> bool {
        *self == Self::infinity()
    }

    /// Dehomogenization `P(T, 1)`.
    pub fn affine(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }

    /// Coefficient of `U^d`.
    pub fn leading_u(&self) -> &BigInt {
        &self.coeffs[self.degree]
    }

    /// Coefficient of `V^d`.
    pub fn leading_v(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn eval(&self, t: &ProjectivePoint) -> BigInt {
        eval_hom(&self.affine(), &t.u, &t.v, self.degree)
    }

    pub fn eval_uv(&self, u: &BigInt, v: &BigInt) -> BigInt {
        eval_hom(&self.affine(), u, v, self.degree)
    }
}

impl fmt::Display for HomogPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in (0..=self.degree).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let j = self.degree - i;
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let mut mono = Vec::new();
            if i > 0 {
                mono.push(if i == 1 { "U".to_string() } else { format!("U^{i}") });
            }
            if j > 0 {
                mono.push(if j == 1 { "V".to_string() } else { format!("V^{j}") });
            }
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{mag}*{}", mono.join("*"))
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for HomogPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Minimal form of an algebraic point given by its minimal polynomial, or of infinity.
pub enum AlgebraicPoint<'a> {
    Finite(&'a IntPolynomial),
    Infinity,
}

pub fn homogenize_minpoly(t: AlgebraicPoint<'_>) -> Result<HomogPolynomial> {
    match t {
        AlgebraicPoint::Infinity => Ok(HomogPolynomial::infinity()),
        AlgebraicPoint::Finite(f) => {
            if !is_irreducible(f)? {
                return Err(Error::NotMinimalPolynomial);
            }
            let g = primitive_part(f);
            Ok(HomogPolynomial::from_poly(&g, g.deg0()))
        }
    }
}

pub fn eval_proj(p: &HomogPolynomial, t0: &ProjectivePoint) -> BigInt {
    p.eval(t0)
}

/// `[u:v]` with coprime integers, `v > 0`, or `[1:0]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    pub u: BigInt,
    pub v: BigInt,
}

impl ProjectivePoint {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let (mut u, mut v): (BigInt, BigInt) = (u.into(), v.into());
        if u.is_zero() && v.is_zero() {
            return Err(Error::InvalidArgument("[0:0] is not a point".into()));
        }
        let g = u.gcd(&v);
        u /= &g;
        v /= &g;
        if v.is_negative() || (v.is_zero() && u.is_negative()) {
            u = -u;
            v = -v;
        }
        Ok(ProjectivePoint { u, v })
    }

    pub fn infinity() -> Self {
        ProjectivePoint { u: BigInt::one(), v: BigInt::zero() }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ProjectivePoint { u: n.into(), v: BigInt::one() }
    }

    pub fn from_rational(t: &BigRational) -> Self {
        ProjectivePoint { u: t.numer().clone(), v: t.denom().clone() }
    }

    pub fn is_infinity(&self) -> bool {
        self.v.is_zero()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        (!self.v.is_zero()).then(|| BigRational::new(self.u.clone(), self.v.clone()))
    }

    pub fn height(&self) -> BigInt {
        std::cmp::max(self.u.abs(), self.v.abs())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.v.is_one() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}/{}", self.u, self.v)
        }
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Self::infinity());
        }
        let parse = |x: &str| -> Result<BigInt> {
            x.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad point '{s}'")))
        };
        if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let (a, b) = inner.split_once(':').ok_or_else(|| Error::Parse(format!("bad point '{s}'")))?;
            return Self::new(parse(a)?, parse(b)?);
        }
        match s.split_once('/') {
            Some((a, b)) => {
                let b = parse(b)?;
                if b.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in '{s}'")));
                }
                Self::new(parse(a)?, b)
            }
            None => Ok(Self::integer(parse(s)?)),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::super::integer::ip;
    use super::*;

    #[test]
    fn homogenization() {
        let h = homogenize_minpoly(AlgebraicPoint::Finite(&ip(&[-2, 0, 1]))).unwrap();
        assert_eq!(h.to_string(), "U^2-2*V^2");
        assert_eq!(homogenize_minpoly(AlgebraicPoint::Infinity).unwrap().to_string(), "V");
        let h = homogenize_minpoly(AlgebraicPoint::Finite(&ip(&[-3, 1]))).unwrap();
        assert_eq!(h.to_string(), "U-3*V");
        assert_eq!(
            homogenize_minpoly(AlgebraicPoint::Finite(&ip(&[-4, 0, 1]))),
            Err(Error::NotMinimalPolynomial)
        );
        // sign normalized to a positive U coefficient
        let h = homogenize_minpoly(AlgebraicPoint::Finite(&ip(&[6, -2]))).unwrap();
        assert_eq!(h.to_string(), "U-3*V");
    }

    #[test]
    fn evaluation() {
        let h = HomogPolynomial::from_poly(&ip(&[-2, 0, 1]), 2);
        assert_eq!(h.eval(&ProjectivePoint::integer(3)), BigInt::from(7));
        assert_eq!(h.eval(&ProjectivePoint::new(1, 1).unwrap()), BigInt::from(-1));
        assert_eq!(HomogPolynomial::infinity().eval(&ProjectivePoint::infinity()), BigInt::zero());
    }

    #[test]
    fn point_normalization() {
        let p = ProjectivePoint::new(-6, -4).unwrap();
        assert_eq!((p.u.clone(), p.v.clone()), (BigInt::from(3), BigInt::from(2)));
        assert_eq!(ProjectivePoint::new(-5, 0).unwrap(), ProjectivePoint::infinity());
        assert!(ProjectivePoint::new(0, 0).is_err());
        assert_eq!("7/5".parse::<ProjectivePoint>().unwrap(), ProjectivePoint::new(7, 5).unwrap());
        assert_eq!("[2:-4]".parse::<ProjectivePoint>().unwrap(), ProjectivePoint::new(-1, 2).unwrap());
        assert_eq!("inf".parse::<ProjectivePoint>().unwrap().to_string(), "inf");
    }
}
