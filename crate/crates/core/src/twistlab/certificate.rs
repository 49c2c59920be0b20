use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::curve::{CurvePoint, SuperellipticCurve, TwistedCurve};
use crate::error::{Error, Result};
use crate::exactmath::{factorize, valuation_u64};
use crate::exactmath::primes::factor_small;
use crate::polynomial::integer::{has_rational_root, reduce_mod};
use crate::polynomial::HomogPolynomial;

/// A prime `p | d` with `n ∤ v_p(d)`, `p ∤ a_0 a_N` and `P mod p` rootless.
/// Then `n v_p(y) = v_p(d) + v_p(P(t, z))` with `v_p(P(t, z)) = 0`, which is impossible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionCertificate {
    #[serde(serialize_with = "crate::serde_util::big")]
    pub p: BigInt,
    pub v_d: u32,
    pub v_a0: u32,
    pub v_an: u32,
    /// Coefficients of `P mod p`, low degree first.
    pub reduction: Vec<u64>,
}

pub fn obstruction_certificate(c: &TwistedCurve) -> Result<Option<ObstructionCertificate>> {
    let base = &c.base;
    if !base.n_divides_degree() {
        return Err(Error::CertificateRequiresDivisibility);
    }
    if !base.is_separable() {
        return Err(Error::RepeatedRoots);
    }
    if has_rational_root(&base.p) {
        return Err(Error::RationalRoot);
    }
    if c.d.is_zero() {
        return Ok(None);
    }
    let (a0, an) = (base.p.coeff(0), base.p.lc());
    for (p, v_d) in factorize(&c.d) {
        // residues are enumerated, so only machine-size primes are tried
        let Some(pu) = p.to_u64().filter(|&q| q < 1 << 32) else { continue };
        if v_d % base.n == 0 || (&a0 % &p).is_zero() || (&an % &p).is_zero() {
            continue;
        }
        let red = reduce_mod(&base.p, pu);
        if red.has_root() {
            continue;
        }
        return Ok(Some(ObstructionCertificate { p, v_d, v_a0: 0, v_an: 0, reduction: red.c }));
    }
    Ok(None)
}

/// Checks a certificate against the curve it claims to obstruct.
pub fn verify_certificate(c: &TwistedCurve, cert: &ObstructionCertificate) -> bool {
    let Some(p) = cert.p.to_u64() else { return false };
    let v = |x: &BigInt| if x.is_zero() { u32::MAX } else { valuation_u64(p, x) };
    c.base.n_divides_degree()
        && v(&c.d) == cert.v_d
        && cert.v_d % c.n() != 0
        && v(&c.base.p.coeff(0)) == 0
        && v(&c.base.p.lc()) == 0
        && !reduce_mod(&c.base.p, p).has_root()
}

/// Sends a point of `y^n = 2 alpha^{n1} P` to `Y = y^{n2} / alpha` on `Y^{n1} = 2 P`,
/// where `n1` is the least prime factor of `n` and `n2 = n / n1`.
pub fn map_twist_point(base: &SuperellipticCurve, alpha: &BigInt, pt: &CurvePoint) -> Result<CurvePoint> {
    let n = base.n;
    let n1 = factor_small(n as u64).first().map(|&(q, _)| q as u32).unwrap_or(n);
    if n1 == n {
        return Err(Error::InvalidArgument(format!("n = {n} is not composite")));
    }
    if alpha.is_zero() {
        return Err(Error::ZeroInput("map_twist_point"));
    }
    let n2 = n / n1;
    let two = BigInt::from(2);
    let src = TwistedCurve { base: base.clone(), d: &two * num_traits::pow(alpha.clone(), n1 as usize) };
    if !src.contains(pt) {
        return Err(Error::IdentityViolated);
    }
    let yn2 = num_traits::pow(pt.y.clone(), n2 as usize);
    let (big_y, rem) = yn2.div_rem(alpha);
    if !rem.is_zero() {
        return Err(Error::IdentityViolated);
    }
    // when n does not divide N the two models use different weights: Y is divided by z^(w n2 - w1)
    let w1 = base.big_n.div_ceil(n1 as usize);
    let k = base.weight * n2 as usize - w1;
    let (big_y, rem) = big_y.div_rem(&num_traits::pow(pt.z.clone(), k));
    if !rem.is_zero() {
        return Err(Error::IdentityViolated);
    }
    let target = &two * HomogPolynomial::from_poly(&base.p, n1 as usize * w1).eval_uv(&pt.t, &pt.z);
    if num_traits::pow(big_y.clone(), n1 as usize) != target {
        return Err(Error::IdentityViolated);
    }
    Ok(CurvePoint { y: big_y, t: pt.t.clone(), z: pt.z.clone() }.normalized(w1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::integer::ip;
    use crate::twistlab::build_curve;
    use crate::twistlab::local::{local_solubility, LocalOutcome, Place};

    fn twist(n: u32, p: &[i64], d: i64) -> TwistedCurve {
        TwistedCurve::new(build_curve(n, &ip(p)).unwrap(), BigInt::from(d)).unwrap()
    }

    #[test]
    fn quartic_certificate_at_three() {
        let c = twist(2, &[1, 0, 0, 0, 1], 3);
        let cert = obstruction_certificate(&c).unwrap().unwrap();
        assert_eq!(cert.p, BigInt::from(3));
        assert_eq!((cert.v_d, cert.v_a0, cert.v_an), (1, 0, 0));
        assert!(verify_certificate(&c, &cert));
        assert_eq!(local_solubility(&c, &Place::prime(3), None), LocalOutcome::Insoluble);
    }

    #[test]
    fn untwisted_has_no_certificate() {
        assert_eq!(obstruction_certificate(&twist(2, &[1, 0, 0, 0, 1], 1)).unwrap(), None);
    }

    #[test]
    fn quadratic_certificate_at_five() {
        let c = twist(2, &[-2, 0, 1], 5);
        let cert = obstruction_certificate(&c).unwrap().unwrap();
        assert_eq!(cert.p, BigInt::from(5));
        assert_eq!(cert.reduction, vec![3, 0, 1]);
    }

    #[test]
    fn certificate_errors() {
        assert_eq!(obstruction_certificate(&twist(2, &[-2, 0, 0, 1], 3)), Err(Error::CertificateRequiresDivisibility));
        assert_eq!(obstruction_certificate(&twist(2, &[-1, 0, 1], 3)), Err(Error::RationalRoot));
        assert_eq!(obstruction_certificate(&twist(3, &[-1, 0, 0, 0, 0, 0, 1], 2)), Err(Error::RationalRoot));
    }

    #[test]
    fn quartic_twist_map() {
        // y^4 = 8 (t^4 + 1) at [2 : 1 : 1]: 16 = 8 * 2
        let base = build_curve(4, &ip(&[1, 0, 0, 0, 1])).unwrap();
        let pt = CurvePoint::new(2, 1, 1);
        let out = map_twist_point(&base, &BigInt::from(2), &pt).unwrap();
        // Y = 4 / 2 = 2 and 2^2 = 2 * 2
        assert_eq!(out, CurvePoint::new(2, 1, 1));
        // t^4 + 1 has no rational root, so [0 : 1 : 1] is not on the curve
        assert_eq!(map_twist_point(&base, &BigInt::from(2), &CurvePoint::new(0, 1, 1)), Err(Error::IdentityViolated));
        assert_eq!(map_twist_point(&base, &BigInt::from(2), &CurvePoint::new(3, 1, 1)), Err(Error::IdentityViolated));
    }

    #[test]
    fn trivial_maps_to_trivial() {
        let base = build_curve(4, &ip(&[-1, 0, 0, 0, 1])).unwrap();
        let out = map_twist_point(&base, &BigInt::from(3), &CurvePoint::new(0, -1, 1)).unwrap();
        assert!(out.is_trivial());
        // n = 6 over a quartic: weights 1 and 2
        let base = build_curve(6, &ip(&[-1, 0, 0, 0, 1])).unwrap();
        assert!(map_twist_point(&base, &BigInt::from(5), &CurvePoint::new(0, 1, 1)).unwrap().is_trivial());
    }

    #[test]
    fn prime_n_is_rejected() {
        let base = build_curve(3, &ip(&[1, 0, 0, 1])).unwrap();
        assert!(map_twist_point(&base, &BigInt::from(1), &CurvePoint::new(2, 1, 1)).is_err());
    }
}
