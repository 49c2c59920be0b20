//! Ramification of specializations predicted from intersection numbers with
//! the branch points, and an empirical check of those predictions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::covers::{GaloisCover, GroupTag, SpecializationReport};
use crate::error::{Error, Result};
use crate::exactmath::{factorize, prime_divisors, valuation};
use crate::polynomial::{determinant, HomogPolynomial, ProjectivePoint};
use crate::serde_util;

/// A Galois orbit of branch points with its ramification index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchOrbit {
    pub minpoly_hom: HomogPolynomial,
    pub e: u32,
}

impl BranchOrbit {
    pub fn new(minpoly_hom: HomogPolynomial, e: u32) -> Self {
        BranchOrbit { minpoly_hom, e }
    }

    /// Order of `<tau^k>` for an inertia generator `tau` of order `e`.
    pub fn inertia_order(&self, k: u32) -> u32 {
        self.e / self.e.gcd(&k)
    }

    fn is_p_integral(&self, p: &BigInt) -> bool {
        let bad = |c: &BigInt| !c.is_zero() && (c % p).is_zero();
        !(bad(self.minpoly_hom.leading_u()) || bad(self.minpoly_hom.leading_v()))
    }
}

pub fn intersection_number(orbit: &BranchOrbit, t0: &ProjectivePoint, p: &BigInt) -> Result<u32> {
    if !orbit.is_p_integral(p) {
        return Err(Error::OrbitNotIntegral(format!("{} at p = {p}", orbit.minpoly_hom)));
    }
    let x = orbit.minpoly_hom.eval(t0);
    if x.is_zero() {
        return Err(Error::BranchPoint);
    }
    valuation(p, &x)
}

/// Resultant of two binary forms of their formal degrees.
pub fn hom_resultant(f: &HomogPolynomial, g: &HomogPolynomial) -> BigInt {
    let (d, e) = (f.degree(), g.degree());
    let n = d + e;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 0..e {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            m[i][i + j] = c.clone();
        }
    }
    for i in 0..d {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            m[e + i][i + j] = c.clone();
        }
    }
    determinant(m)
}

pub fn exceptional_superset<C: GaloisCover + ?Sized>(cover: &C) -> BTreeSet<BigInt> {
    let mut s: BTreeSet<BigInt> = prime_divisors(&BigInt::from(cover.group_order())).into_iter().collect();
    s.extend(cover.defining_primes());
    let forms = cover.critical_forms();
    let mut add = |x: &BigInt| {
        if !x.is_zero() {
            s.extend(prime_divisors(x));
        }
    };
    for (i, f) in forms.iter().enumerate() {
        add(f.leading_u());
        add(f.leading_v());
        for g in &forms[i + 1..] {
            add(&hom_resultant(f, g));
        }
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePrediction {
    #[serde(serialize_with = "serde_util::big")]
    pub prime: BigInt,
    pub orbit: usize,
    pub intersection: u32,
    pub predicted_order: u32,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationReport {
    pub t0: ProjectivePoint,
    pub primes: Vec<PrimePrediction>,
    #[serde(serialize_with = "serde_util::big_set")]
    pub superset: BTreeSet<BigInt>,
}

impl RamificationReport {
    /// Non-exceptional primes predicted to ramify, with their inertia orders.
    pub fn predicted_ramified(&self) -> BTreeMap<BigInt, u32> {
        self.primes
            .iter()
            .filter(|e| !e.exceptional && e.predicted_order > 1)
            .map(|e| (e.prime.clone(), e.predicted_order))
            .collect()
    }

    pub fn entry(&self, p: &BigInt) -> Option<&PrimePrediction> {
        self.primes.iter().find(|e| &e.prime == p)
    }
}

fn predict_with<C: GaloisCover + ?Sized>(
    cover: &C,
    orbits: &[BranchOrbit],
    superset: &BTreeSet<BigInt>,
    t0: &ProjectivePoint,
) -> Result<RamificationReport> {
    if cover.is_branch_point(t0) {
        return Err(Error::BranchPoint);
    }
    let mut hits: BTreeMap<BigInt, Vec<(usize, u32)>> = BTreeMap::new();
    for (i, o) in orbits.iter().enumerate() {
        let x = o.minpoly_hom.eval(t0);
        if x.is_zero() {
            return Err(Error::BranchPoint);
        }
        for (p, k) in factorize(&x) {
            hits.entry(p).or_default().push((i, k));
        }
    }
    let primes = hits
        .into_iter()
        .map(|(p, v)| {
            let (orbit, k) = v[0];
            let o = &orbits[orbit];
            let exceptional = v.len() > 1 || superset.contains(&p) || !o.is_p_integral(&p);
            PrimePrediction { predicted_order: o.inertia_order(k), prime: p, orbit, intersection: k, exceptional }
        })
        .collect();
    Ok(RamificationReport { t0: t0.clone(), primes, superset: superset.clone() })
}

pub fn predict<C: GaloisCover + ?Sized>(cover: &C, t0: &ProjectivePoint) -> Result<RamificationReport> {
    predict_with(cover, &cover.branch_orbits(), &exceptional_superset(cover), t0)
}

/// Order of the inertia group at `p` in the specialized Galois field, when it is
/// determined by discriminant data alone (tame primes).
pub fn actual_inertia_order(rep: &SpecializationReport, p: &BigInt) -> Option<u32> {
    if !rep.ramified.contains(p) {
        return Some(1);
    }
    let small = p <= &BigInt::from(3);
    match rep.group {
        GroupTag::Trivial => Some(1),
        GroupTag::C2 => Some(2),
        GroupTag::C3 => (!small).then_some(3),
        GroupTag::S3 => {
            if small {
                return None;
            }
            let d_k = rep.d_k.as_ref()?;
            match valuation(p, d_k).ok()? {
                1 => Some(2),
                2 => Some(3),
                _ => None,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub t0: ProjectivePoint,
    #[serde(serialize_with = "serde_util::big")]
    pub prime: BigInt,
    pub predicted: u32,
    pub actual: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CsvRow {
    pub t0: String,
    pub prime: String,
    pub orbit: Option<usize>,
    #[serde(rename = "I_p")]
    pub i_p: u32,
    pub predicted_order: u32,
    pub actual_ramified: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConsistencyStats {
    pub checked: usize,
    /// Samples at branch points or with inseparable specializations.
    pub skipped: usize,
    pub matches: usize,
    pub mismatches: Vec<Mismatch>,
    /// Primes with positive intersection on two orbits outside the superset.
    pub uniqueness_violations: usize,
    /// Samples where `|d| < prod l` over odd non-exceptional `l` with `I_l = 1`.
    pub bound_violations: usize,
    #[serde(skip)]
    pub rows: Vec<CsvRow>,
}

enum Outcome {
    Skipped,
    Checked { mismatches: Vec<Mismatch>, unique_bad: usize, bound_bad: bool, rows: Vec<CsvRow> },
}

fn check_one<C: GaloisCover + ?Sized>(
    cover: &C,
    orbits: &[BranchOrbit],
    superset: &BTreeSet<BigInt>,
    t0: &ProjectivePoint,
) -> Outcome {
    if cover.is_branch_point(t0) {
        return Outcome::Skipped;
    }
    let (Ok(pred), Ok(rep)) = (predict_with(cover, orbits, superset, t0), cover.specialize(t0)) else {
        return Outcome::Skipped;
    };
    let mut primes: BTreeSet<BigInt> = pred.primes.iter().map(|e| e.prime.clone()).collect();
    primes.extend(rep.ramified.iter().cloned());
    let mut mismatches = Vec::new();
    let mut rows = Vec::new();
    let mut unique_bad = 0;
    let mut bound = BigInt::one();
    for p in primes {
        let entry = pred.entry(&p);
        let actual = actual_inertia_order(&rep, &p);
        rows.push(CsvRow {
            t0: t0.to_string(),
            prime: p.to_string(),
            orbit: entry.map(|e| e.orbit),
            i_p: entry.map_or(0, |e| e.intersection),
            predicted_order: entry.map_or(1, |e| e.predicted_order),
            actual_ramified: rep.ramified.contains(&p),
        });
        if superset.contains(&p) {
            continue;
        }
        if let Some(e) = entry {
            if e.exceptional {
                unique_bad += 1;
                continue;
            }
            if e.intersection == 1 && p.is_odd() {
                bound *= &p;
            }
        }
        let predicted = entry.map_or(1, |e| e.predicted_order);
        if actual != Some(predicted) {
            mismatches.push(Mismatch { t0: t0.clone(), prime: p, predicted, actual });
        }
    }
    Outcome::Checked { mismatches, unique_bad, bound_bad: rep.d_f.abs() < bound, rows }
}

/// Random `[u:v]` with `|u| <= height`, `1 <= v <= height`, in lowest terms.
pub fn random_points(n: usize, height: i64, seed: u64) -> Vec<ProjectivePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| ProjectivePoint::new(rng.gen_range(-height..=height), rng.gen_range(1..=height)).expect("v >= 1"))
        .collect()
}

pub fn consistency_check<C: GaloisCover + ?Sized>(cover: &C, sample: usize, height: i64, seed: u64) -> ConsistencyStats {
    consistency_check_points(cover, &random_points(sample, height, seed))
}

pub fn consistency_check_points<C: GaloisCover + ?Sized>(cover: &C, points: &[ProjectivePoint]) -> ConsistencyStats {
    let orbits = cover.branch_orbits();
    let superset = exceptional_superset(cover);
    let outcomes: Vec<Outcome> = points.par_iter().map(|t0| check_one(cover, &orbits, &superset, t0)).collect();
    let mut stats = ConsistencyStats::default();
    for o in outcomes {
        match o {
            Outcome::Skipped => stats.skipped += 1,
            Outcome::Checked { mismatches, unique_bad, bound_bad, rows } => {
                stats.checked += 1;
                if mismatches.is_empty() {
                    stats.matches += 1;
                }
                stats.mismatches.extend(mismatches);
                stats.uniqueness_violations += unique_bad;
                stats.bound_violations += bound_bad as usize;
                stats.rows.extend(rows);
            }
        }
    }
    stats
}
