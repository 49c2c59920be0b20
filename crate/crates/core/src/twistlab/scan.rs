//! Quadratic twists that are locally specializations at every place, and
//! those among them with no small global point.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::curve::{build_curve, SuperellipticCurve, TwistedCurve};
use super::local::{ElsReport, LocalSolver, Place, Verdict};
use super::search::find_point;
use crate::beckmann::exceptional_superset;
use crate::covers::{GaloisCover, QuadraticCover};
use crate::error::{Error, Result};
use crate::exactmath::primes::primes_up_to;
use crate::exactmath::{fundamental_discriminant, is_nfree, legendre_u64, prime_divisors, squarefree_part};
use crate::polynomial::integer::{has_rational_root, reduce_mod};
use crate::polynomial::{discriminant, IntPolynomial, ProjectivePoint};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleTwist {
    pub p: u64,
    #[serde(serialize_with = "crate::serde_util::big")]
    pub d: BigInt,
    pub els: ElsReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub t0: ProjectivePoint,
    #[serde(serialize_with = "crate::serde_util::big")]
    pub m0: BigInt,
    /// `S`: exceptional primes, 2, and small primes where a unit twist is locally insoluble.
    #[serde(serialize_with = "crate::serde_util::big_set")]
    pub s: BTreeSet<BigInt>,
    /// Primes ramified in `Q(sqrt(m0))`.
    #[serde(serialize_with = "crate::serde_util::big_set")]
    pub s1: BTreeSet<BigInt>,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub orbit: IntPolynomial,
    pub twists: Vec<AdmissibleTwist>,
}

fn check_cover(cover: &QuadraticCover) -> Result<SuperellipticCurve> {
    if cover.infinity_branch || cover.degree() % 2 == 1 || has_rational_root(&cover.p) {
        return Err(Error::RationalBranchPoint);
    }
    build_curve(2, &cover.p)
}

/// Least-degree branch orbit, ties broken by the smaller absolute discriminant.
fn chosen_orbit(cover: &QuadraticCover) -> IntPolynomial {
    cover
        .branch_orbits
        .iter()
        .map(|(g, _)| g)
        .filter(|g| g.deg0() > 0)
        .min_by_key(|g| (g.deg0(), if g.deg0() >= 2 { discriminant(g).abs() } else { BigInt::zero() }))
        .expect("a branch orbit")
        .clone()
}

fn splits_completely(g: &IntPolynomial, p: u64) -> bool {
    let red = reduce_mod(g, p);
    red.degree() == g.degree() && red.roots().len() == g.deg0()
}

/// A quadratic nonresidue modulo the odd prime `l`.
fn nonresidue(l: u64) -> u64 {
    (2..l).find(|&a| legendre_u64(a as i64, l) == -1).unwrap()
}

/// Odd primes below the Weil threshold where the class of 1 or of a nonresidue is insoluble.
fn small_prime_augmentation(solver: &LocalSolver) -> BTreeSet<BigInt> {
    let bound = solver.threshold.unwrap_or(0);
    primes_up_to(bound.saturating_sub(1))
        .into_iter()
        .filter(|&l| l > 2)
        .filter(|&l| {
            let place = Place::prime(l);
            [1, nonresidue(l)]
                .iter()
                .any(|&u| solver.explicit(&BigInt::from(u), &place, None).is_insoluble())
        })
        .map(BigInt::from)
        .collect()
}

pub fn admissible_prime_scan(cover: &QuadraticCover, t0: &ProjectivePoint, bound: u64) -> Result<ScanReport> {
    let base = check_cover(cover)?;
    if cover.is_branch_point(t0) {
        return Err(Error::BranchPoint);
    }
    let m0 = squarefree_part(&cover.value_at(t0))?;
    if m0.is_one() {
        return Err(Error::InvalidArgument("m0 = 1 at t0".into()));
    }
    let solver = LocalSolver::new(&base);
    let mut s = exceptional_superset(cover);
    s.insert(BigInt::from(2));
    s.extend(small_prime_augmentation(&solver));
    let s1: BTreeSet<BigInt> = prime_divisors(&fundamental_discriminant(&m0)).into_iter().collect();
    let orbit = chosen_orbit(cover);

    let mut ells: Vec<i64> = s.iter().chain(&s1).filter_map(|x| x.to_i64()).collect();
    ells.push(m0.to_i64().ok_or_else(|| Error::InvalidArgument("m0 out of range".into()))?);
    let mut twists = Vec::new();
    for p in primes_up_to(bound) {
        let pb = BigInt::from(p);
        if p % 4 != 1 || s.contains(&pb) || s1.contains(&pb) || !splits_completely(&orbit, p) {
            continue;
        }
        if !ells.iter().all(|&l| legendre_u64(l, p) == 1) {
            continue;
        }
        let d = squarefree_part(&(&m0 * &pb))?;
        let els = solver.els(&d)?;
        if els.verdict != Verdict::True {
            return Err(Error::LocalVerificationFailed(format!("d = {d} (p = {p}): {:?}", els.verdict)));
        }
        twists.push(AdmissibleTwist { p, d, els });
    }
    Ok(ScanReport { t0: t0.clone(), m0, s, s1, orbit, twists })
}

/// Smallest-height `t0` where the specialization is a nontrivial quadratic field.
pub fn default_base_point(cover: &QuadraticCover) -> ProjectivePoint {
    for h in 0i64.. {
        let mut cands: Vec<ProjectivePoint> = Vec::new();
        for v in 1..=h.max(1) {
            for u in -h..=h {
                if (u.abs() == h || v == h) && num_integer::Integer::gcd(&u, &v) == 1 {
                    cands.push(ProjectivePoint::new(u, v).unwrap());
                }
            }
        }
        for t in cands {
            if !cover.is_branch_point(&t) && !squarefree_part(&cover.value_at(&t)).unwrap().is_one() {
                return t;
            }
        }
    }
    unreachable!()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    AdmissiblePrime,
    Sweep,
}

/// A locally soluble twist with no point up to `searched_height`; not a proof of global failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HasseCandidate {
    #[serde(serialize_with = "crate::serde_util::big")]
    pub d: BigInt,
    pub source: CandidateSource,
    pub searched_height: u64,
    pub height_bounded: bool,
}

fn schedule(h: u64) -> Vec<u64> {
    let mut s: Vec<u64> = std::iter::successors(Some(16u64), |x| Some(x * 4)).take_while(|&x| x < h).collect();
    s.push(h);
    s
}

pub fn hasse_failure_candidates(cover: &QuadraticCover, x: u64, h: u64) -> Result<Vec<HasseCandidate>> {
    let base = check_cover(cover)?;
    if cover.degree() < 8 {
        return Err(Error::InvalidArgument(format!("degree {} < 8", cover.degree())));
    }
    let solver = LocalSolver::new(&base);
    let sched = schedule(h.max(1));
    let no_point = |d: &BigInt| find_point(&TwistedCurve { base: base.clone(), d: d.clone() }, &sched).is_none();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();

    let t0 = default_base_point(cover);
    let m0 = squarefree_part(&cover.value_at(&t0))?;
    let m0_abs = m0.abs().to_u64().unwrap_or(u64::MAX);
    if m0_abs <= x {
        let scan = admissible_prime_scan(cover, &t0, x / m0_abs)?;
        for tw in scan.twists {
            if tw.d.abs() <= BigInt::from(x) && seen.insert(tw.d.clone()) && no_point(&tw.d) {
                out.push(HasseCandidate { d: tw.d, source: CandidateSource::AdmissiblePrime, searched_height: h, height_bounded: true });
            }
        }
    }
    for a in 2..=x as i64 {
        for d in [BigInt::from(a), BigInt::from(-a)] {
            if !is_nfree(&d, 2) || seen.contains(&d) {
                continue;
            }
            if solver.els(&d)?.verdict == Verdict::True && no_point(&d) {
                seen.insert(d.clone());
                out.push(HasseCandidate { d, source: CandidateSource::Sweep, searched_height: h, height_bounded: true });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::quad_cover;
    use crate::polynomial::integer::ip;

    /// `(t^2 + 1)(t^2 - 2)(t^4 + 2)`
    pub(crate) fn octic() -> QuadraticCover {
        let p = ip(&[1, 0, 1]) * ip(&[-2, 0, 1]) * ip(&[2, 0, 0, 0, 1]);
        quad_cover(&p).unwrap()
    }

    #[test]
    fn pinned_octic_scan() {
        let c = octic();
        let t0 = ProjectivePoint::integer(0);
        let r = admissible_prime_scan(&c, &t0, 10_000).unwrap();
        assert_eq!(r.m0, BigInt::from(-1));
        assert_eq!(r.orbit, ip(&[1, 0, 1]));
        let two = BigInt::from(2);
        assert_eq!(r.s, [two.clone(), BigInt::from(3)].into_iter().collect());
        assert_eq!(r.s1, [two].into_iter().collect());
        assert_eq!(r.twists.len(), 143);
        let first: Vec<u64> = r.twists.iter().take(3).map(|t| t.p).collect();
        assert_eq!(first, [73, 97, 193]);
        for tw in &r.twists {
            assert_eq!(tw.d, -BigInt::from(tw.p));
            assert_eq!(tw.p % 24, 1);
            assert_eq!(tw.els.verdict, Verdict::True);
        }
        assert!(admissible_prime_scan(&c, &t0, 50).unwrap().twists.is_empty());
    }

    #[test]
    fn octic_small_twists_pinned() {
        let b = build_curve(2, &octic().p).unwrap();
        let solver = LocalSolver::new(&b);
        for (d, v) in [(1, Verdict::True), (-1, Verdict::True), (2, Verdict::True), (-2, Verdict::False), (3, Verdict::False), (7, Verdict::True)] {
            assert_eq!(solver.els(&BigInt::from(d)).unwrap().verdict, v, "d = {d}");
        }
    }

    #[test]
    fn odd_degree_is_rejected() {
        let c = quad_cover(&ip(&[-2, 0, 0, 1])).unwrap();
        let t0 = ProjectivePoint::integer(0);
        assert_eq!(admissible_prime_scan(&c, &t0, 100).unwrap_err(), Error::RationalBranchPoint);
        assert_eq!(hasse_failure_candidates(&c, 10, 10).unwrap_err(), Error::RationalBranchPoint);
    }

    #[test]
    fn tiny_sweep_is_empty() {
        assert!(hasse_failure_candidates(&octic(), 1, 100).unwrap().is_empty());
    }
}
