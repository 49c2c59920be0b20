use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{GaloisCover, GroupTag, SpecializationReport};
use crate::beckmann::BranchOrbit;
use crate::error::{Error, Result};
use crate::exactmath::{fundamental_discriminant, prime_divisors, squarefree_part};
use crate::polynomial::integer::content;
use crate::polynomial::{discriminant, factor_over_q, HomogPolynomial, IntPolynomial, ProjectivePoint};

/// The cover attached to `Q(T)(sqrt(P(T)))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadraticCover {
    pub p: IntPolynomial,
    pub branch_orbits: Vec<(IntPolynomial, HomogPolynomial)>,
    pub infinity_branch: bool,
    pub r: usize,
}

pub fn quad_cover(p: &IntPolynomial) -> Result<QuadraticCover> {
    let n = p.degree().ok_or(Error::ZeroInput("quad_cover"))?;
    if n == 0 {
        return Err(Error::InvalidArgument("constant polynomial has no branch points".into()));
    }
    if n >= 2 && discriminant(p).is_zero() {
        return Err(Error::RepeatedRoots);
    }
    let c = content(p);
    if squarefree_part(&c)? != c {
        return Err(Error::ContentNotSquarefree);
    }
    let fac = factor_over_q(p)?;
    let mut branch_orbits: Vec<_> = fac
        .factors
        .iter()
        .map(|(g, _)| (g.clone(), HomogPolynomial::from_poly(g, g.deg0())))
        .collect();
    let infinity_branch = n % 2 == 1;
    if infinity_branch {
        branch_orbits.push((IntPolynomial::zero(), HomogPolynomial::infinity()));
    }
    Ok(QuadraticCover { p: p.clone(), branch_orbits, infinity_branch, r: n + infinity_branch as usize })
}

impl QuadraticCover {
    pub fn degree(&self) -> usize {
        self.p.deg0()
    }

    /// `P_hom(u, v) * v^(deg P mod 2)`; its square class is the specialization.
    pub fn value_at(&self, t0: &ProjectivePoint) -> BigInt {
        let n = self.degree();
        let mut x = HomogPolynomial::from_poly(&self.p, n).eval(t0);
        if n % 2 == 1 {
            x *= &t0.v;
        }
        x
    }
}

pub fn quad_specialize(c: &QuadraticCover, t0: &ProjectivePoint) -> Result<SpecializationReport> {
    if c.branch_orbits.iter().any(|(_, h)| h.eval(t0).is_zero()) {
        return Err(Error::BranchPoint);
    }
    let x = c.value_at(t0);
    let m = squarefree_part(&x)?;
    let (group, d_f) = if m.is_one() { (GroupTag::Trivial, BigInt::one()) } else { (GroupTag::C2, fundamental_discriminant(&m)) };
    let ramified = prime_divisors(&d_f);
    Ok(SpecializationReport { t0: t0.clone(), group, m: Some(m), d_k: None, d_f, ramified })
}

impl GaloisCover for QuadraticCover {
    fn group_order(&self) -> u32 {
        2
    }

    fn branch_orbits(&self) -> Vec<BranchOrbit> {
        self.branch_orbits.iter().map(|(_, h)| BranchOrbit::new(h.clone(), 2)).collect()
    }

    fn critical_forms(&self) -> Vec<HomogPolynomial> {
        let mut v: Vec<_> = self.branch_orbits.iter().map(|(_, h)| h.clone()).collect();
        if !self.infinity_branch {
            v.push(HomogPolynomial::infinity());
        }
        v
    }

    fn defining_primes(&self) -> BTreeSet<BigInt> {
        let mut s = BTreeSet::new();
        let mut add = |x: &BigInt| {
            if !x.is_zero() {
                s.extend(prime_divisors(x));
            }
        };
        add(&content(&self.p));
        add(&self.p.lc());
        add(&self.p.coeff(0));
        if self.degree() >= 2 {
            add(&discriminant(&self.p));
        }
        s
    }

    fn is_branch_point(&self, t0: &ProjectivePoint) -> bool {
        self.branch_orbits.iter().any(|(_, h)| h.eval(t0).is_zero())
    }

    fn specialize(&self, t0: &ProjectivePoint) -> Result<SpecializationReport> {
        quad_specialize(self, t0)
    }
}

/// Whether `d` is 1 or a fundamental discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: &BigInt) -> bool {
    if d.is_one() {
        return true;
    }
    if d.is_zero() {
        return false;
    }
    let four = BigInt::from(4);
    let sqfree = |m: &BigInt| squarefree_part(m).map(|s| &s == m).unwrap_or(false);
    let r = d.mod_floor(&four);
    if r.is_one() {
        return sqfree(d);
    }
    if !r.is_zero() {
        return false;
    }
    let m: BigInt = d / &four;
    let r = m.mod_floor(&four);
    (r == BigInt::from(2) || r == BigInt::from(3)) && sqfree(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::integer::ip;

    #[test]
    fn branch_orbits_by_degree_parity() {
        let c = quad_cover(&ip(&[-2, 0, 1])).unwrap();
        assert!(!c.infinity_branch);
        assert_eq!(c.r, 2);
        assert_eq!(c.branch_orbits.len(), 1);
        assert_eq!(c.branch_orbits[0].1.to_string(), "U^2-2*V^2");

        let c = quad_cover(&ip(&[-2, 0, 0, 1])).unwrap();
        assert!(c.infinity_branch);
        assert_eq!(c.r, 4);
        assert_eq!(c.branch_orbits.len(), 2);
        assert!(c.branch_orbits[1].1.is_infinity());

        let sq = ip(&[-2, 0, 1]).pow(2);
        assert_eq!(quad_cover(&sq), Err(Error::RepeatedRoots));
        assert_eq!(quad_cover(&ip(&[-4, 0, 4])), Err(Error::ContentNotSquarefree));
    }

    #[test]
    fn specializations_of_t2_minus_2() {
        let c = quad_cover(&ip(&[-2, 0, 1])).unwrap();
        let r = quad_specialize(&c, &ProjectivePoint::integer(3)).unwrap();
        assert_eq!(r.m, Some(BigInt::from(7)));
        assert_eq!(r.d_f, BigInt::from(28));
        assert_eq!(r.ramified, vec![BigInt::from(2), BigInt::from(7)]);
        assert_eq!(r.group, GroupTag::C2);

        let r = quad_specialize(&c, &ProjectivePoint::new(1, 3).unwrap()).unwrap();
        assert_eq!(r.m, Some(BigInt::from(-17)));
        assert_eq!(r.d_f, BigInt::from(-68));

        // 7/5: 49 - 50 = -1
        let r = quad_specialize(&c, &ProjectivePoint::new(7, 5).unwrap()).unwrap();
        assert_eq!(r.d_f, BigInt::from(-4));

        // leading coefficient at infinity
        let r = quad_specialize(&c, &ProjectivePoint::infinity()).unwrap();
        assert_eq!(r.group, GroupTag::Trivial);
        assert!(r.ramified.is_empty());
    }

    #[test]
    fn rational_branch_point_rejected() {
        let c = quad_cover(&ip(&[-4, 0, 1])).unwrap();
        assert_eq!(quad_specialize(&c, &ProjectivePoint::integer(2)), Err(Error::BranchPoint));
        let c = quad_cover(&ip(&[-2, 0, 0, 1])).unwrap();
        assert_eq!(quad_specialize(&c, &ProjectivePoint::infinity()), Err(Error::BranchPoint));
    }

    #[test]
    fn odd_degree_uses_extra_factor_of_v() {
        let c = quad_cover(&ip(&[-2, 0, 0, 1])).unwrap();
        // P_hom(1, 2) = 1 - 16 = -15, times v = 2 gives -30
        let r = quad_specialize(&c, &ProjectivePoint::new(1, 2).unwrap()).unwrap();
        assert_eq!(r.m, Some(BigInt::from(-30)));
        assert_eq!(r.d_f, BigInt::from(-120));
    }

    #[test]
    fn fundamental_discriminants() {
        for d in [1, -3, -4, 5, -7, 8, -8, 12, 13, -15, 28, -68] {
            assert!(is_fundamental_discriminant(&BigInt::from(d)), "{d}");
        }
        for d in [0, -1, 2, 3, 9, 16, 20, -12 * 4] {
            assert!(!is_fundamental_discriminant(&BigInt::from(d)), "{d}");
        }
    }
}
