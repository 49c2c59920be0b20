use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cubic_field::{cubic_field_discriminant, s3_sextic_discriminant};
use super::{GaloisCover, GroupTag, SpecializationReport};
use crate::beckmann::BranchOrbit;
use crate::error::{Error, Result};
use crate::exactmath::{exact_root, fundamental_discriminant, prime_divisors, squarefree_part};
use crate::polynomial::integer::content;
use crate::polynomial::{
    discriminant, discriminant_y, factor_over_q, is_irreducible, specialize_y, t_degree, BivariatePolynomial,
    Factorization, HomogPolynomial, IntPolynomial, Poly, ProjectivePoint,
};

const S3_WITNESS_TRIES: i64 = 25;

/// A finite branch candidate: an irreducible factor of the Y-discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicBranch {
    pub factor: IntPolynomial,
    pub form: HomogPolynomial,
    /// Multiplicity in the discriminant.
    pub multiplicity: u32,
    /// Ramification index of the Galois closure above the roots of `factor`.
    pub e: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SurveyFlags {
    pub galois_s3_over_qt: bool,
    pub delta_irreducible: bool,
    pub leading_form_ok: bool,
    pub branch_conjugate: bool,
    pub regular: bool,
}

/// Splitting field over Q(T) of a monic cubic in Y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubicCover {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub p: BivariatePolynomial,
    pub delta: IntPolynomial,
    pub delta_factors: Factorization,
    pub finite: Vec<CubicBranch>,
    pub infinity_index: u32,
    pub flags: SurveyFlags,
    /// Smallest |t0| (in the order 0, 1, -1, 2, ...) with an S3 specialization.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s3_witness: Option<i64>,
}

/// Scaled depressed form `W^3 + A W + B` with `W = 3Y + a2`.
fn depressed(a2: &IntPolynomial, a1: &IntPolynomial, a0: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
    let k = |n: i64| Poly::constant(BigInt::from(n));
    let a = k(9) * a1.clone() - k(3) * a2.clone() * a2.clone();
    let b = k(2) * a2.pow(3) - k(9) * a1.clone() * a2.clone() + k(27) * a0.clone();
    (a, b)
}

/// Ramification index at a place from the valuations of `A`, `B` and `-4A^3 - 27B^2`.
/// `None` stands for the zero polynomial.
fn index_from_valuations(mut va: Option<u32>, mut vb: Option<u32>, mut vd: u32) -> u32 {
    loop {
        if va == Some(0) || vb == Some(0) {
            return if vd % 2 == 1 { 2 } else { 1 };
        }
        let b = match vb {
            None => return if va.expect("separable cubic") % 2 == 1 { 2 } else { 1 },
            Some(b) => b,
        };
        match va {
            Some(a) if 3 * a < 2 * b => return if a % 2 == 1 { 2 } else { 1 },
            _ if b % 3 != 0 => return 3,
            a => {
                let k = b / 3;
                va = a.map(|a| a - 2 * k);
                vb = Some(0);
                vd -= 6 * k;
            }
        }
    }
}

fn local_index(a: &IntPolynomial, b: &IntPolynomial, val: impl Fn(&IntPolynomial) -> Option<u32>) -> u32 {
    let d = Poly::constant(BigInt::from(-4)) * a.pow(3) - Poly::constant(BigInt::from(27)) * b.pow(2);
    index_from_valuations(val(a), val(b), val(&d).expect("nonzero discriminant"))
}

fn poly_valuation(f: &IntPolynomial, r: &IntPolynomial) -> Option<u32> {
    if f.is_zero() {
        return None;
    }
    let mut k = 0;
    let mut g = f.clone();
    while let Some(q) = g.div_exact_poly(r) {
        g = q;
        k += 1;
    }
    Some(k)
}

fn valuation_at_zero(f: &IntPolynomial) -> Option<u32> {
    f.coeffs().iter().position(|c| !c.is_zero()).map(|i| i as u32)
}

fn infinity_index(p: &BivariatePolynomial) -> u32 {
    let a: Vec<IntPolynomial> = (0..3).map(|j| p.coeff(j)).collect();
    let k = (0..3)
        .filter(|&j| !a[j].is_zero())
        .map(|j| a[j].deg0().div_ceil(3 - j))
        .max()
        .unwrap_or(0);
    let b: Vec<IntPolynomial> = (0..3).map(|j| if a[j].is_zero() { a[j].clone() } else { a[j].reverse_to((3 - j) * k) }).collect();
    let (aa, bb) = depressed(&b[2], &b[1], &b[0]);
    local_index(&aa, &bb, valuation_at_zero)
}

fn leading_form(p: &BivariatePolynomial) -> Option<IntPolynomial> {
    let d = t_degree(p);
    if d == 0 {
        return None;
    }
    Some(IntPolynomial::new((0..3).map(|j| p.coeff(j).coeff(d)).collect()))
}

fn s3_witness(p: &BivariatePolynomial) -> Option<i64> {
    (0..=2 * S3_WITNESS_TRIES)
        .map(|i| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
        .find(|&t| {
            cubic_specialize_checked(p, &BigRational::from_integer(t.into()))
                .map(|r| r.group == GroupTag::S3)
                .unwrap_or(false)
        })
}

impl CubicCover {
    pub fn new(p: &BivariatePolynomial) -> Result<Self> {
        if p.degree() != Some(3) {
            return Err(Error::InvalidArgument("expected a cubic in Y".into()));
        }
        let delta = discriminant_y(p)?;
        if delta.is_zero() {
            return Err(Error::RepeatedRoots);
        }
        let delta_factors = factor_over_q(&delta)?;
        let (a, b) = depressed(&p.coeff(2), &p.coeff(1), &p.coeff(0));
        let finite: Vec<CubicBranch> = delta_factors
            .factors
            .iter()
            .map(|(r, k)| CubicBranch {
                factor: r.clone(),
                form: HomogPolynomial::from_poly(r, r.deg0()),
                multiplicity: *k,
                e: local_index(&a, &b, |f| poly_valuation(f, r)),
            })
            .collect();
        let e_inf = infinity_index(p);
        let s3_witness = s3_witness(p);
        let delta_irreducible = delta_factors.factors.len() == 1 && delta_factors.factors[0].1 == 1;
        let leading_form_ok = leading_form(p).is_some_and(|f| f.degree() == Some(2) && is_irreducible(&f).unwrap_or(false));
        let galois = s3_witness.is_some();
        let flags = SurveyFlags {
            galois_s3_over_qt: galois,
            delta_irreducible,
            leading_form_ok,
            branch_conjugate: delta_irreducible && e_inf == 1,
            regular: galois && delta_factors.factors.iter().any(|(_, k)| k % 2 == 1),
        };
        Ok(CubicCover { p: p.clone(), delta, delta_factors, finite, infinity_index: e_inf, flags, s3_witness })
    }

    /// Branch points: roots of discriminant factors with `e > 1`, and possibly infinity.
    pub fn branch_forms(&self) -> Vec<(HomogPolynomial, u32)> {
        let mut out: Vec<_> = self.finite.iter().filter(|b| b.e > 1).map(|b| (b.form.clone(), b.e)).collect();
        if self.infinity_index > 1 {
            out.push((HomogPolynomial::infinity(), self.infinity_index));
        }
        out
    }
}

pub fn s3_survey_predicates(p: &BivariatePolynomial) -> SurveyFlags {
    CubicCover::new(p).map(|c| c.flags).unwrap_or_default()
}

/// Monic integral model `x^3 + d a2 x^2 + d^2 a1 x + d^3 a0` of `P(t0, Y)`.
fn integral_model(p: &BivariatePolynomial, t0: &BigRational) -> IntPolynomial {
    let f = specialize_y(p, t0);
    let d = f.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = (0..=3)
        .map(|j| {
            let scaled = f.coeff(j) * BigRational::from_integer(num_traits::pow(d.clone(), 3 - j));
            scaled.to_integer()
        })
        .collect();
    IntPolynomial::new(coeffs)
}

fn cubic_specialize_checked(p: &BivariatePolynomial, t0: &BigRational) -> Result<SpecializationReport> {
    let g = integral_model(p, t0);
    let disc = discriminant(&g);
    if disc.is_zero() {
        return Err(Error::CubicBranchPoint);
    }
    let fac = factor_over_q(&g)?;
    let t0p = ProjectivePoint::from_rational(t0);
    let degs: Vec<usize> = fac.factors.iter().map(|(f, _)| f.deg0()).collect();
    let (group, m, d_k, d_f) = if degs == [3] {
        let d_k = cubic_field_discriminant(&g)?;
        if disc.is_positive() && exact_root(&disc, 2).is_some() {
            (GroupTag::C3, None, Some(d_k.clone()), d_k)
        } else {
            let m = squarefree_part(&d_k)?;
            (GroupTag::S3, Some(m), Some(d_k.clone()), s3_sextic_discriminant(&d_k))
        }
    } else if let Some((q, _)) = fac.factors.iter().find(|(f, _)| f.deg0() == 2) {
        let qd = discriminant(q);
        let m = squarefree_part(&qd)?;
        (GroupTag::C2, Some(m.clone()), None, fundamental_discriminant(&m))
    } else {
        (GroupTag::Trivial, None, None, BigInt::one())
    };
    let ramified = match &d_k {
        Some(dk) => prime_divisors(dk),
        None => prime_divisors(&d_f),
    };
    Ok(SpecializationReport { t0: t0p, group, m, d_k, d_f, ramified })
}

pub fn cubic_specialize(c: &CubicCover, t0: &BigRational) -> Result<SpecializationReport> {
    cubic_specialize_checked(&c.p, t0)
}

impl GaloisCover for CubicCover {
    fn group_order(&self) -> u32 {
        6
    }

    fn branch_orbits(&self) -> Vec<BranchOrbit> {
        self.branch_forms().into_iter().map(|(h, e)| BranchOrbit::new(h, e)).collect()
    }

    fn critical_forms(&self) -> Vec<HomogPolynomial> {
        let mut v: Vec<_> = self.finite.iter().map(|b| b.form.clone()).collect();
        v.push(HomogPolynomial::infinity());
        v
    }

    fn defining_primes(&self) -> BTreeSet<BigInt> {
        let mut s = BTreeSet::new();
        let mut add = |x: &BigInt| {
            if !x.is_zero() {
                s.extend(prime_divisors(x));
            }
        };
        add(&content(&self.delta));
        add(&self.delta.lc());
        add(&self.delta.coeff(0));
        let radical = self.finite.iter().fold(IntPolynomial::one(), |acc, b| acc * b.factor.clone());
        if radical.deg0() >= 2 {
            add(&discriminant(&radical));
        }
        for j in 0..3 {
            let a = self.p.coeff(j);
            if !a.is_zero() {
                add(&a.lc());
            }
        }
        s
    }

    fn is_branch_point(&self, t0: &ProjectivePoint) -> bool {
        self.branch_forms().iter().any(|(h, _)| h.eval(t0).is_zero())
    }

    fn specialize(&self, t0: &ProjectivePoint) -> Result<SpecializationReport> {
        match t0.to_rational() {
            Some(t) => cubic_specialize(self, &t),
            None => Err(Error::InvalidArgument("cubic specialization at infinity is not supported".into())),
        }
    }
}
