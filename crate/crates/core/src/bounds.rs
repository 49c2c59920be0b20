//! Exponents and admissibility conditions of the conditional density bounds, in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::primes::{factor_small, is_prime_u64, totient};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn least_prime(n: u64) -> Option<u64> {
    factor_small(n).first().map(|&(p, _)| p)
}

/// What the case analysis needs to know about a finite group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupDescriptor {
    pub order: u64,
    /// Least prime divisor of `order`, always recomputed.
    pub least_prime: u64,
    pub rank_lower_bound: Option<u32>,
    /// Orders of cyclic quotients.
    pub cyclic_quotients: Option<Vec<u64>>,
    pub nilpotent: Option<bool>,
    /// Least prime `q` such that some inertia group has a central element of order `q`.
    pub central_prime: Option<u64>,
}

impl GroupDescriptor {
    pub fn new(order: u64) -> Result<Self> {
        let least_prime = least_prime(order).ok_or(Error::TrivialGroup)?;
        Ok(GroupDescriptor { order, least_prime, rank_lower_bound: None, cyclic_quotients: None, nilpotent: None, central_prime: None })
    }

    /// `Z/n1 x ... x Z/nk`.
    pub fn abelian(factors: &[u64]) -> Result<Self> {
        let order = factors.iter().product();
        let mut g = Self::new(order)?;
        let exponent = factors.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
        g.cyclic_quotients = Some((1..=exponent).filter(|d| exponent % d == 0).collect());
        let rank = factor_small(order).iter().map(|&(p, _)| factors.iter().filter(|&&f| f % p == 0).count() as u32).max();
        g.rank_lower_bound = rank;
        g.nilpotent = Some(true);
        Ok(g)
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::abelian(&[n])
    }

    /// `S_n` for `n >= 2`.
    pub fn symmetric(n: u64) -> Result<Self> {
        let order = (1..=n).product();
        let mut g = Self::new(order)?;
        g.cyclic_quotients = Some(vec![1, 2]);
        g.nilpotent = Some(n <= 2);
        g.rank_lower_bound = Some(if n <= 3 { 1 } else { 2 });
        Ok(g)
    }
}

/// Branch indices `e_1, ..., e_r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamificationType {
    pub indices: Vec<u64>,
}

impl RamificationType {
    pub fn new(indices: Vec<u64>) -> Result<Self> {
        if indices.is_empty() || indices.iter().any(|&e| e < 2) {
            return Err(Error::InconsistentRamification);
        }
        Ok(RamificationType { indices })
    }

    pub fn uniform(e: u64, r: usize) -> Result<Self> {
        Self::new(vec![e; r])
    }

    pub fn r(&self) -> u64 {
        self.indices.len() as u64
    }

    pub fn e0(&self) -> u64 {
        *self.indices.iter().min().unwrap()
    }

    /// Least prime dividing some index.
    pub fn q0(&self) -> u64 {
        self.indices.iter().filter_map(|&e| least_prime(e)).min().unwrap()
    }

    /// Every index divides `order`.
    pub fn fits(&self, order: u64) -> bool {
        self.indices.iter().all(|&e| order % e == 0)
    }
}

/// `alpha(G) = p / ((p - 1) |G|)`.
pub fn malle_alpha(g: &GroupDescriptor) -> Result<BigRational> {
    if g.order < 2 {
        return Err(Error::TrivialGroup);
    }
    let p = g.least_prime as i64;
    Ok(q(p, (p - 1) * g.order as i64))
}

/// `2 + 2 / (q0 - 1)`.
fn eq1_bound(q0: u64) -> BigRational {
    int(2) + q(2, q0 as i64 - 1)
}

/// `e = 2 / (|G| (1 - 1/e0) (r - 2 - 2/(q0 - 1)))`.
pub fn abc_exponent(rt: &RamificationType, order: u64) -> Result<BigRational> {
    let slack = int(rt.r()) - eq1_bound(rt.q0());
    if !slack.is_positive() {
        return Err(Error::BranchPointCondition);
    }
    let e0 = rt.e0() as i64;
    Ok(int(2) / (int(order) * q(e0 - 1, e0) * slack))
}

/// Smallest exponent over the given sub-multisets of branch indices; subsets failing the
/// branch-point condition are skipped.
pub fn abc_exponent_best(subsets: &[RamificationType], order: u64) -> Result<(usize, BigRational)> {
    subsets
        .iter()
        .enumerate()
        .filter_map(|(i, s)| abc_exponent(s, order).ok().map(|e| (i, e)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .ok_or(Error::BranchPointCondition)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Sufficient cases that fired.
    pub cases: Vec<&'static str>,
}

/// `r > 2 + 2/(q0 - 1)`; cases `1`: r >= 5, `2`: r >= 4 and q0 >= 3, `3`: r >= 3 and q0 >= 5.
pub fn condition_eq1(rt: &RamificationType) -> ConditionReport {
    let (r, q0) = (rt.r(), rt.q0());
    let holds = int(r) > eq1_bound(q0);
    let mut cases = Vec::new();
    if r >= 5 {
        cases.push("1");
    }
    if r >= 4 && q0 >= 3 {
        cases.push("2");
    }
    if r >= 3 && q0 >= 5 {
        cases.push("3");
    }
    ConditionReport { holds, cases }
}

/// Right-hand side `2 (q0/(q0-1) + (p-1) e0 / (p (e0-1)))`.
pub fn eq2_bound(e0: u64, q0: u64, p: u64) -> BigRational {
    let (e0, q0, p) = (e0 as i64, q0 as i64, p as i64);
    int(2) * (q(q0, q0 - 1) + q((p - 1) * e0, p * (e0 - 1)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eq2Report {
    pub holds: bool,
    pub cases: Vec<&'static str>,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub bound: BigRational,
    /// `e < alpha(G)`, when `e` is defined.
    pub e_below_alpha: Option<bool>,
}

pub fn condition_eq2(rt: &RamificationType, g: &GroupDescriptor) -> Eq2Report {
    let (r, e0, q0, p) = (rt.r(), rt.e0(), rt.q0(), g.least_prime);
    let bound = eq2_bound(e0, q0, p);
    let holds = int(r) > bound;
    let mut cases = Vec::new();
    if r >= 7 {
        cases.push("a");
    }
    if r == 6 && e0 >= 3 {
        cases.push("b");
    }
    if r == 5 && q0 >= 3 && (e0, q0, p) != (3, 3, 3) {
        cases.push("c");
    }
    if r == 4 && q0 > 2 * p {
        cases.push("d");
    }
    let alpha = malle_alpha(g).ok();
    let e_below_alpha = abc_exponent(rt, g.order).ok().zip(alpha).map(|(e, a)| e < a);
    Eq2Report { holds, cases, bound, e_below_alpha }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub beta: BigRational,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub alpha: BigRational,
    /// `alpha >= beta > 1/|G| >= alpha / 2`.
    pub chain_holds: bool,
}

/// `beta = q / ((q - 1) |G|)` for a prime `q` dividing `|G|`.
pub fn beta_exponent(qp: u64, order: u64) -> Result<BetaReport> {
    if !is_prime_u64(qp) || order % qp != 0 {
        return Err(Error::InvalidArgument(format!("{qp} is not a prime divisor of {order}")));
    }
    let beta = q(qp as i64, (qp as i64 - 1) * order as i64);
    let alpha = malle_alpha(&GroupDescriptor::new(order)?)?;
    let inv = q(1, order as i64);
    let chain_holds = alpha >= beta && beta > inv && inv >= &alpha / int(2);
    Ok(BetaReport { beta, alpha, chain_holds })
}

/// Genus from `2g - 2 = |G| (-2 + sum (1 - 1/e_i))`.
pub fn rh_genus(order: u64, rt: &RamificationType) -> Result<u64> {
    if !rt.fits(order) {
        return Err(Error::InconsistentRamification);
    }
    let sum = rt.indices.iter().fold(BigRational::zero(), |acc, &e| acc + q(e as i64 - 1, e as i64));
    let two_g_minus_2 = int(order) * (sum - int(2));
    if !two_g_minus_2.is_integer() {
        return Err(Error::InconsistentRamification);
    }
    let v = two_g_minus_2.to_integer();
    if v < BigInt::from(-2) || (&v % 2u32) != BigInt::zero() {
        return Err(Error::InconsistentRamification);
    }
    Ok(((v + 2u32) / 2u32).to_u64().unwrap())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BclViolation {
    IndexNotDividing { index: u64 },
    /// Fewer than `phi(p^m)` points with index divisible by `p^m`.
    PrimePower { prime_power: u64, needed: u64, found: u64 },
    /// Fewer than `phi(n)` points of index `n`.
    FullIndex { needed: u64, found: u64 },
    /// A double cover has an even number of branch points.
    OddQuadratic { r: u64 },
}

/// Necessary conditions for `indices` to be the branch indices of a `Z/n` cover defined over `Q`.
pub fn bcl_cyclic_check(n: u64, indices: &[u64]) -> Vec<BclViolation> {
    let mut out: Vec<BclViolation> =
        indices.iter().filter(|&&e| n % e != 0).map(|&e| BclViolation::IndexNotDividing { index: e }).collect();
    for (p, m) in factor_small(n) {
        let pm = p.pow(m);
        let found = indices.iter().filter(|&&e| e % pm == 0).count() as u64;
        let needed = totient(pm);
        if found < needed {
            out.push(BclViolation::PrimePower { prime_power: pm, needed, found });
        }
    }
    let full = indices.iter().filter(|&&e| e == n).count() as u64;
    if full > 0 && full < totient(n) {
        out.push(BclViolation::FullIndex { needed: totient(n), found: full });
    }
    if n == 2 && indices.len() % 2 == 1 {
        out.push(BclViolation::OddQuadratic { r: indices.len() as u64 });
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Clause {
    #[serde(rename = "3.4a")]
    RankSix,
    #[serde(rename = "3.4b")]
    CyclicQuotient,
    #[serde(rename = "3.4c")]
    NilpotentLargePrime,
    #[serde(rename = "3.7a")]
    NilpotentEven,
    #[serde(rename = "3.7b")]
    NilpotentOdd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub applies: Vec<Clause>,
    /// Clauses whose descriptor data is missing.
    pub undecided: Vec<Clause>,
}

const SMALL_CYCLIC: [u64; 9] = [1, 2, 3, 4, 5, 6, 8, 10, 12];

fn is_2a3b(n: u64) -> bool {
    let mut m = n;
    if m % 2 != 0 {
        return false;
    }
    while m % 2 == 0 {
        m /= 2;
    }
    m == 1 || m == 3
}

pub fn corollary_case_classifier(g: &GroupDescriptor) -> Result<CaseReport> {
    let mut applies = Vec::new();
    let mut undecided = Vec::new();
    let mut decide = |clause: Clause, v: Option<bool>| match v {
        Some(true) => applies.push(clause),
        Some(false) => {}
        None => undecided.push(clause),
    };
    decide(Clause::RankSix, g.rank_lower_bound.map(|r| r >= 6));
    decide(Clause::CyclicQuotient, g.cyclic_quotients.as_ref().map(|qs| qs.iter().any(|c| !SMALL_CYCLIC.contains(c))));
    let primes: Vec<u64> = factor_small(g.order).into_iter().map(|(p, _)| p).collect();
    decide(Clause::NilpotentLargePrime, g.nilpotent.map(|nil| nil && primes.iter().any(|&p| p >= 7)));
    let even = g.order % 2 == 0;
    decide(Clause::NilpotentEven, g.nilpotent.map(|nil| nil && even && !is_2a3b(g.order)));
    decide(Clause::NilpotentOdd, g.nilpotent.map(|nil| nil && !even && primes.len() >= 2));
    if applies.is_empty() && undecided.len() == 5 {
        return Err(Error::InsufficientDescriptor("rank, cyclic quotients or nilpotency"));
    }
    Ok(CaseReport { applies, undecided })
}

/// `a(G) = (|G| - 1) / (|G| * 3 |G|^4 log |G|)`.
pub fn deb_constant(order: u64) -> f64 {
    let n = order as f64;
    (n - 1.0) / (n * 3.0 * n.powi(4) * n.ln())
}

/// `e = 1/(g - 1)` for hyperelliptic data: `r` points of index 2 on a double cover.
pub fn hyperelliptic_exponent(r: usize) -> Result<(BigRational, u64)> {
    let rt = RamificationType::uniform(2, r)?;
    let e = abc_exponent(&rt, 2)?;
    let g = rh_genus(2, &rt)?;
    Ok((e, g))
}
