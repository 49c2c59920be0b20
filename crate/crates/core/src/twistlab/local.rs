//! Solubility of `y^n = d * P(t, z)` with `y != 0` over `R` and over `Q_p`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use super::curve::{SuperellipticCurve, TwistedCurve};
use crate::error::{Error, Result};
use crate::exactmath::primes::{gcd_u64, pow_mod, primes_up_to};
use crate::exactmath::{factorize, valuation_u64};
use crate::polynomial::integer::{eval_rational, rational_roots, reduce_mod};
use crate::polynomial::{discriminant, real_roots_sign_analysis, FpPoly, IntPolynomial, Poly};

const EXHAUSTIVE_LIMIT: u64 = 1 << 16;
const RANDOM_TRIALS: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Prime(BigInt),
}

impl Place {
    pub fn prime(p: u64) -> Self {
        Place::Prime(BigInt::from(p))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LocalWitness {
    /// `d * P` takes positive values on `R`, or `n` is odd.
    Real,
    /// A point `(t : z)` known modulo `p^precision` whose neighbourhood carries nontrivial points.
    Adic {
        #[serde(serialize_with = "crate::serde_util::big")]
        t: BigInt,
        #[serde(serialize_with = "crate::serde_util::big")]
        z: BigInt,
        precision: u32,
    },
    /// Good reduction with more `F_p`-points than the trivial ones; Hensel lifts one.
    HasseWeil,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "witness", rename_all = "snake_case")]
pub enum LocalOutcome {
    Soluble(LocalWitness),
    Insoluble,
    Unknown,
}

impl LocalOutcome {
    pub fn is_soluble(&self) -> bool {
        matches!(self, LocalOutcome::Soluble(_))
    }

    pub fn is_insoluble(&self) -> bool {
        matches!(self, LocalOutcome::Insoluble)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlaceLog {
    pub place: Place,
    #[serde(flatten)]
    pub outcome: LocalOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElsReport {
    pub verdict: Verdict,
    /// Primes at or above this bound with good reduction are soluble by the Weil bound.
    pub threshold: u64,
    pub log: Vec<PlaceLog>,
}

/// `p + 1 - 2 g sqrt(p) > (n + 1)(N + 1)`, in exact integer arithmetic.
pub fn hasse_weil_margin(p: u64, n: u32, big_n: usize, genus: u64) -> bool {
    let l = p as i128 + 1 - (n as i128 + 1) * (big_n as i128 + 1);
    l > 0 && l * l > 4 * (genus as i128) * (genus as i128) * p as i128
}

/// Least `x >= g^2` past which the margin holds for every prime.
pub fn hasse_weil_threshold(n: u32, big_n: usize, genus: u64) -> u64 {
    let mut x = (genus * genus).max(2);
    while !hasse_weil_margin(x, n, big_n, genus) {
        x += 1;
    }
    x
}

fn v_rat(p: &BigInt, x: &BigRational) -> i64 {
    let pu = p.to_u64().unwrap();
    valuation_u64(pu, x.numer()) as i64 - valuation_u64(pu, x.denom()) as i64
}

/// Arithmetic in `Q_p` for one prime and exponent `n`.
struct Adic {
    p: u64,
    pb: BigInt,
    n: u32,
    /// `2 v_p(n) + 1`: units congruent to 1 modulo `p^e` are n-th powers.
    e: u32,
}

enum Search {
    Found(u64),
    Exhausted,
    Incomplete,
}

struct RootInfo {
    x0: BigRational,
    cofactor: IntPolynomial,
    u_x0: BigRational,
    v_u_x0: i64,
    soluble: bool,
}

impl Adic {
    fn new(p: u64, n: u32) -> Self {
        let e = 2 * valuation_u64(p, &BigInt::from(n)) + 1;
        Adic { p, pb: BigInt::from(p), n, e }
    }

    fn pk(&self, k: u32) -> BigInt {
        num_traits::pow(self.pb.clone(), k as usize)
    }

    /// Whether a unit residue modulo `p^(2 v_p(k) + 1)` is a k-th power.
    fn unit_is_power(&self, u: &BigInt, k: u32) -> bool {
        let vk = valuation_u64(self.p, &BigInt::from(k));
        if vk == 0 {
            let g = gcd_u64(k as u64, self.p - 1);
            let r = u.mod_floor(&self.pb).to_u64().unwrap();
            return pow_mod(r, (self.p - 1) / g, self.p) == 1;
        }
        let m = self.p.pow(2 * vk + 1);
        let r = u.mod_floor(&BigInt::from(m)).to_u64().unwrap();
        (1..m).filter(|y| y % self.p != 0).any(|y| pow_mod(y, k as u64, m) == r)
    }

    /// Whether `w` lies in `(Q_p^*)^k`.
    fn is_power_class(&self, w: &BigRational, k: u32) -> bool {
        if k == 1 {
            return true;
        }
        let v = v_rat(&self.pb, w);
        if v.rem_euclid(k as i64) != 0 {
            return false;
        }
        let vk = valuation_u64(self.p, &BigInt::from(k));
        let m = self.pk(2 * vk + 1);
        let scaled = if v >= 0 { w / BigRational::from_integer(self.pk(v as u32)) } else { w * BigRational::from_integer(self.pk((-v) as u32)) };
        let den = scaled.denom().mod_floor(&m);
        let inv = den.modinv(&m).expect("unit denominator");
        let unit = (scaled.numer() * inv).mod_floor(&m);
        self.unit_is_power(&unit, k)
    }

    fn root_info(&self, g: &IntPolynomial, x0: &BigRational, mu: u32) -> Option<RootInfo> {
        if (x0.denom() % &self.pb).is_zero() {
            return None;
        }
        let lin = Poly::new(vec![-x0.numer().clone(), x0.denom().clone()]);
        let cofactor = g.div_exact_poly(&lin.pow(mu)).expect("root multiplicity");
        let u_x0 = eval_rational(&cofactor, x0);
        let w = &u_x0 * BigRational::from_integer(num_traits::pow(x0.denom().clone(), mu as usize));
        let soluble = self.is_power_class(&w, self.n.gcd(&mu));
        let v_u_x0 = v_rat(&self.pb, &u_x0);
        Some(RootInfo { x0: x0.clone(), cofactor, u_x0, v_u_x0, soluble })
    }

    /// The disc `a + p^k Z_p` around a rational root is isolated when the cofactor's
    /// class cannot move on it.
    fn isolated(&self, r: &RootInfo, a: &BigInt, k: u32) -> bool {
        let q = r.cofactor.compose_linear(a, &self.pk(k));
        let target = r.v_u_x0 + self.e as i64;
        let c0 = BigRational::from_integer(q.coeff(0)) - &r.u_x0;
        if !c0.is_zero() && v_rat(&self.pb, &c0) < target {
            return false;
        }
        q.coeffs().iter().skip(1).all(|c| c.is_zero() || valuation_u64(self.p, c) as i64 >= target)
    }

    fn in_disc(&self, r: &RootInfo, a: &BigInt, k: u32) -> bool {
        let diff = r.x0.numer() - a * r.x0.denom();
        diff.is_zero() || valuation_u64(self.p, &diff) >= k
    }

    /// A residue `s` where `h(s)` is a unit n-th power.
    fn unit_search(&self, h: &IntPolynomial, hb: &FpPoly) -> Search {
        let p = self.p;
        if self.e > 1 {
            let m = p.pow(self.e);
            let mb = BigInt::from(m);
            let hm: Vec<u64> = h.coeffs().iter().map(|c| c.mod_floor(&mb).to_u64().unwrap()).collect();
            for s in 0..m {
                let val = hm.iter().rev().fold(0u64, |acc, &c| (acc * s + c) % m);
                if val % p != 0 && self.unit_is_power(&BigInt::from(val), self.n) {
                    return Search::Found(s);
                }
            }
            return Search::Exhausted;
        }
        let g = gcd_u64(self.n as u64, p - 1);
        let good = |s: u64| {
            let val = hb.eval(s);
            val != 0 && (g == 1 || pow_mod(val, (p - 1) / g, p) == 1)
        };
        if p <= EXHAUSTIVE_LIMIT || hb.deg0() == 0 {
            return (0..p).find(|&s| good(s)).map_or(Search::Exhausted, Search::Found);
        }
        if g == 1 {
            return (0..=hb.deg0() as u64).find(|&s| good(s)).map_or(Search::Exhausted, Search::Found);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..RANDOM_TRIALS {
            let s = rng.gen_range(0..p);
            if good(s) {
                return Search::Found(s);
            }
        }
        Search::Incomplete
    }

    /// Searches `x` in `Z_p` with `g(x)` a nonzero n-th power, refining discs up to depth `cap`.
    fn solve(&self, g: &IntPolynomial, roots: &[RootInfo], cap: u32) -> std::result::Result<(BigInt, u32), bool> {
        let mut stack: Vec<(BigInt, u32)> = vec![(BigInt::zero(), 0)];
        let mut unknown = false;
        while let Some((a, k)) = stack.pop() {
            if k > cap {
                unknown = true;
                continue;
            }
            if let Some(r) = roots.iter().find(|r| self.in_disc(r, &a, k)) {
                if self.isolated(r, &a, k) {
                    if r.soluble {
                        return Ok((a, k));
                    }
                    continue;
                }
            }
            let pk = self.pk(k);
            let h = g.compose_linear(&a, &pk);
            let m = h.coeffs().iter().filter(|c| !c.is_zero()).map(|c| valuation_u64(self.p, c)).min().expect("nonzero");
            let pm = self.pk(m);
            let h1 = h.map(|c| c / &pm);
            let hb = reduce_mod(&h1, self.p);
            if m % self.n == 0 {
                match self.unit_search(&h1, &hb) {
                    Search::Found(s) => return Ok((&a + &pk * s, k + self.e)),
                    Search::Exhausted => {}
                    Search::Incomplete => unknown = true,
                }
            }
            if hb.deg0() == 0 {
                continue;
            }
            let dh = hb.derivative();
            for r in hb.roots() {
                let center = &a + &pk * r;
                if dh.eval(r) != 0 {
                    return Ok((center, k + 1));
                }
                stack.push((center, k + 1));
            }
        }
        Err(unknown)
    }
}

/// Cached local data for all twists of one curve.
pub struct LocalSolver {
    pub base: SuperellipticCurve,
    disc: BigInt,
    /// Primes dividing `n * lc * disc`.
    bad_primes: Vec<BigInt>,
    pub threshold: Option<u64>,
    rev: IntPolynomial,
    rev_roots: Vec<(BigRational, u32)>,
    p_roots: Vec<(BigRational, u32)>,
    cache: Mutex<HashMap<(u64, u32, u64, u32), LocalOutcome>>,
}

impl LocalSolver {
    pub fn new(base: &SuperellipticCurve) -> Self {
        let p = &base.p;
        let disc = if base.big_n >= 2 { discriminant(p) } else { BigInt::one() };
        let mut bad = BigInt::from(base.n) * p.lc();
        if !disc.is_zero() {
            bad *= &disc;
        }
        let bad_primes = factorize(&bad).into_iter().map(|(q, _)| q).collect();
        let threshold = base.genus.map(|g| hasse_weil_threshold(base.n, base.big_n, g));
        let rev = p.reverse_to(base.big_n);
        LocalSolver {
            base: base.clone(),
            disc,
            bad_primes,
            threshold,
            rev_roots: rational_roots(&rev),
            rev,
            p_roots: rational_roots(p),
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn real(&self, d: &BigInt) -> LocalOutcome {
        if self.base.n % 2 == 1 || real_roots_sign_analysis(&self.base.p.scale(d)).takes_positive_values {
            LocalOutcome::Soluble(LocalWitness::Real)
        } else {
            LocalOutcome::Insoluble
        }
    }

    /// Depth bound `2 v_p(n) + v_p(disc) + v_p(d) + v_p(lc) + 2`.
    pub fn default_cap(&self, p: u64, d: &BigInt) -> u32 {
        let v = |x: &BigInt| if x.is_zero() { 0 } else { valuation_u64(p, x) };
        2 * v(&BigInt::from(self.base.n)) + v(&self.disc) + v(d) + v(&self.base.p.lc()) + 2
    }

    pub fn has_good_reduction(&self, p: &BigInt, d: &BigInt) -> bool {
        !self.bad_primes.contains(p) && !(d % p).is_zero()
    }

    /// Local answer with the Weil-bound shortcut applied where it is valid.
    pub fn local(&self, d: &BigInt, place: &Place, cap: Option<u32>) -> LocalOutcome {
        if let (Place::Prime(p), Some(g)) = (place, self.base.genus) {
            if let Some(pu) = p.to_u64() {
                if self.has_good_reduction(p, d) && hasse_weil_margin(pu, self.base.n, self.base.big_n, g) {
                    return LocalOutcome::Soluble(LocalWitness::HasseWeil);
                }
            }
        }
        self.explicit(d, place, cap)
    }

    /// Local answer from the disc refinement alone.
    pub fn explicit(&self, d: &BigInt, place: &Place, cap: Option<u32>) -> LocalOutcome {
        let p = match place {
            Place::Infinity => return self.real(d),
            Place::Prime(p) => p,
        };
        let Some(p) = p.to_u64().filter(|&p| p < (1 << 62)) else { return LocalOutcome::Unknown };
        let n = self.base.n;
        let adic = Adic::new(p, n);
        let v = valuation_u64(p, d);
        let unit = d / adic.pk(v);
        let (key, rep) = if adic.e == 1 {
            let g = gcd_u64(n as u64, p - 1);
            let chi = |r: u64| pow_mod(r, (p - 1) / g, p);
            let target = chi(unit.mod_floor(&adic.pb).to_u64().unwrap());
            let rep = (1..p).find(|&r| chi(r) == target).unwrap();
            (target, rep)
        } else {
            let m = p.pow(adic.e);
            let r = unit.mod_floor(&BigInt::from(m)).to_u64().unwrap();
            (r, r)
        };
        let cap = cap.unwrap_or_else(|| self.default_cap(p, d));
        let ck = (p, v % n, key, cap);
        if let Some(hit) = self.cache.lock().unwrap().get(&ck) {
            return hit.clone();
        }
        let d_rep = adic.pk(v % n) * rep;
        let out = self.solve_prime(&adic, &d_rep, cap);
        self.cache.lock().unwrap().insert(ck, out.clone());
        out
    }

    fn solve_prime(&self, adic: &Adic, d: &BigInt, cap: u32) -> LocalOutcome {
        let p = &adic.pb;
        let n = self.base.n as usize;
        let extra = n * self.base.weight - self.base.big_n;
        let mut unknown = false;

        // chart z = 1, t in Z_p
        let g1 = self.base.p.scale(d);
        let roots1: Vec<RootInfo> = self.p_roots.iter().filter_map(|(x0, mu)| adic.root_info(&g1, x0, *mu)).collect();
        match adic.solve(&g1, &roots1, cap) {
            Ok((t, k)) => return LocalOutcome::Soluble(LocalWitness::Adic { t, z: BigInt::one(), precision: k }),
            Err(u) => unknown |= u,
        }

        // chart t = 1, z = p x with x in Z_p
        let mut g2 = self.rev.compose_linear(&BigInt::zero(), p).scale(d);
        if extra > 0 {
            g2 = g2 * Poly::monomial(num_traits::pow(p.clone(), extra), extra);
        }
        let mut roots2: Vec<RootInfo> = self
            .rev_roots
            .iter()
            .filter_map(|(z0, mu)| adic.root_info(&g2, &(z0 / BigRational::from_integer(p.clone())), *mu))
            .collect();
        if extra > 0 {
            roots2.extend(adic.root_info(&g2, &BigRational::zero(), extra as u32));
        }
        match adic.solve(&g2, &roots2, cap) {
            Ok((x, k)) => LocalOutcome::Soluble(LocalWitness::Adic { t: BigInt::one(), z: p * x, precision: k + 1 }),
            Err(u) if u || unknown => LocalOutcome::Unknown,
            Err(_) => LocalOutcome::Insoluble,
        }
    }

    /// Places that need an explicit check for the twist by `d`, in order.
    pub fn explicit_places(&self, d: &BigInt) -> Vec<Place> {
        let mut primes: Vec<BigInt> = self.bad_primes.clone();
        primes.extend(factorize(d).into_iter().map(|(q, _)| q));
        if let Some(t) = self.threshold {
            primes.extend(primes_up_to(t.saturating_sub(1)).into_iter().map(BigInt::from));
        }
        primes.sort();
        primes.dedup();
        std::iter::once(Place::Infinity).chain(primes.into_iter().map(Place::Prime)).collect()
    }

    pub fn els(&self, d: &BigInt) -> Result<ElsReport> {
        let threshold = self.threshold.ok_or(Error::RepeatedRoots)?;
        let mut log = Vec::new();
        let mut verdict = Verdict::True;
        for place in self.explicit_places(d) {
            let outcome = self.local(d, &place, None);
            let stop = outcome.is_insoluble();
            if stop {
                verdict = Verdict::False;
            } else if outcome == LocalOutcome::Unknown {
                verdict = Verdict::Unknown;
            }
            log.push(PlaceLog { place, outcome });
            if stop {
                break;
            }
        }
        Ok(ElsReport { verdict, threshold, log })
    }
}

pub fn local_solubility(c: &TwistedCurve, place: &Place, cap: Option<u32>) -> LocalOutcome {
    LocalSolver::new(&c.base).local(&c.d, place, cap)
}

pub fn everywhere_locally_soluble(c: &TwistedCurve) -> Result<ElsReport> {
    LocalSolver::new(&c.base).els(&c.d)
}
