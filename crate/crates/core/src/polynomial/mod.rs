//! Exact polynomial algebra over Z, Q and F_p.

pub mod dense;
pub mod factor;
pub mod fp;
pub mod homog;
pub mod integer;
pub mod parse;
pub mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

pub use dense::{determinant, discriminant, resultant, ExactDiv, Poly, Ring};
pub use factor::{factor_mod_p, factor_over_q, is_irreducible, Factorization, DEGREE_CAP};
pub use fp::FpPoly;
pub use homog::{eval_proj, homogenize_minpoly, AlgebraicPoint, HomogPolynomial, ProjectivePoint};
pub use parse::{parse_bivariate, parse_poly};
pub use sturm::{real_roots_sign_analysis, RealRootReport};

pub type IntPolynomial = Poly<BigInt>;
pub type RatPolynomial = Poly<BigRational>;
/// Polynomial in Y with coefficients in Z[T].
pub type BivariatePolynomial = Poly<IntPolynomial>;

/// Discriminant with respect to Y of a polynomial monic in Y.
pub fn discriminant_y(p: &BivariatePolynomial) -> Result<IntPolynomial> {
    if p.deg0() < 2 {
        return Err(Error::InvalidArgument("Y-degree below 2".into()));
    }
    if !p.lc().is_one() {
        return Err(Error::NonMonic);
    }
    Ok(discriminant(p))
}

/// `P(t0, Y)` for rational `t0`.
pub fn specialize_y(p: &BivariatePolynomial, t0: &BigRational) -> RatPolynomial {
    p.map(|c| integer::eval_rational(c, t0))
}

/// Degree in T of a bivariate polynomial.
pub fn t_degree(p: &BivariatePolynomial) -> usize {
    p.coeffs().iter().map(|c| c.deg0()).max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::integer::ip;
    use super::*;
    use num_traits::Zero;

    #[test]
    fn discriminants_in_y() {
        let p = parse_bivariate("Y^3+T*Y+T").unwrap();
        assert_eq!(discriminant_y(&p).unwrap(), ip(&[0, 0, -27, -4]));
        let p = parse_bivariate("Y^3+Y+1").unwrap();
        assert_eq!(discriminant_y(&p).unwrap(), ip(&[-31]));
        let q = ip(&[1, 3, 0, -2, 5]);
        let p = Poly::new(vec![-q.clone(), IntPolynomial::zero(), IntPolynomial::one()]);
        assert_eq!(discriminant_y(&p).unwrap(), q.scale(&BigInt::from(4)));
        let p = parse_bivariate("2*Y^2+T").unwrap();
        assert_eq!(discriminant_y(&p), Err(Error::NonMonic));
    }
}
