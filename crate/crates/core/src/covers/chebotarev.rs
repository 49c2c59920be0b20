use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::GaloisCover;
use crate::beckmann::exceptional_superset;
use crate::exactmath::primes::primes_up_to;
use crate::polynomial::integer::{has_rational_root, reduce_mod};
use crate::polynomial::{IntPolynomial, ProjectivePoint};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChebotarevSieve {
    /// Primes `p <= bound`, `p` not dividing `lc(R)`, with `R` rootless mod `p`.
    pub primes: Vec<u64>,
    pub density: f64,
    /// Derangement proportion of `S_n`, the Chebotarev value for a generic `R` of degree `n`.
    pub derangement_estimate: f64,
}

/// Proportion of fixed-point-free permutations in `S_n`.
pub fn derangement_proportion(n: usize) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..=n {
        term *= -1.0 / k as f64;
        sum += term;
    }
    sum
}

pub fn chebotarev_unramified_sieve(r: &IntPolynomial, prime_bound: u64) -> ChebotarevSieve {
    let derangement_estimate = derangement_proportion(r.deg0());
    if r.deg0() == 0 || has_rational_root(r) {
        return ChebotarevSieve { primes: Vec::new(), density: 0.0, derangement_estimate };
    }
    let lc = r.lc();
    let mut considered = 0usize;
    let mut primes = Vec::new();
    for p in primes_up_to(prime_bound) {
        if lc.mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        considered += 1;
        if !reduce_mod(r, p).has_root() {
            primes.push(p);
        }
    }
    let density = if considered == 0 { 0.0 } else { primes.len() as f64 / considered as f64 };
    ChebotarevSieve { primes, density, derangement_estimate }
}

/// Sieve on the minimal polynomial of the branch points. Empty unless the branch
/// points form one finite Galois orbit.
pub fn branch_sieve<C: GaloisCover + ?Sized>(c: &C, prime_bound: u64) -> ChebotarevSieve {
    let orbits = c.branch_orbits();
    match orbits.as_slice() {
        [o] if !o.minpoly_hom.is_infinity() => chebotarev_unramified_sieve(&o.minpoly_hom.affine(), prime_bound),
        _ => ChebotarevSieve { primes: Vec::new(), density: 0.0, derangement_estimate: 0.0 },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnramifiedViolation {
    pub t0: ProjectivePoint,
    #[serde(serialize_with = "crate::serde_util::big")]
    pub prime: BigInt,
}

/// Specializations at sieve primes outside the exceptional superset must be unramified.
/// Branch points in the sample are skipped.
pub fn verify_unramified<C: GaloisCover + ?Sized>(
    c: &C,
    sieve_primes: &[u64],
    sample: &[ProjectivePoint],
) -> Vec<UnramifiedViolation> {
    let exc = exceptional_superset(c);
    let primes: Vec<u64> = sieve_primes.iter().copied().filter(|&p| !exc.contains(&BigInt::from(p))).collect();
    let mut out = Vec::new();
    for t0 in sample {
        if c.is_branch_point(t0) {
            continue;
        }
        let Ok(rep) = c.specialize(t0) else { continue };
        for &p in &primes {
            if rep.ramified.iter().any(|q| q.to_u64() == Some(p)) {
                out.push(UnramifiedViolation { t0: t0.clone(), prime: BigInt::from(p) });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::{quad_cover, CubicCover};
    use crate::polynomial::integer::ip;
    use crate::polynomial::parse_bivariate;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_sieves() {
        let s = chebotarev_unramified_sieve(&ip(&[1, 0, 1]), 1000);
        assert!(s.primes.iter().all(|p| p % 4 == 3));
        assert_eq!(s.primes.len(), primes_up_to(1000).iter().filter(|&&p| p % 4 == 3).count());
        assert!((s.density - 0.5).abs() < 0.05);
        assert_eq!(s.derangement_estimate, 0.5);

        let s = chebotarev_unramified_sieve(&ip(&[-2, 0, 1]), 1000);
        assert!(s.primes.iter().all(|p| p % 8 == 3 || p % 8 == 5));
    }

    #[test]
    fn rational_root_gives_empty_sieve() {
        let s = chebotarev_unramified_sieve(&ip(&[-6, 1, 1]), 1000);
        assert!(s.primes.is_empty());
    }

    #[test]
    fn derangements() {
        assert_eq!(derangement_proportion(1), 0.0);
        assert!((derangement_proportion(4) - 0.375).abs() < 1e-12);
        assert!((derangement_proportion(3) - 1.0 / 3.0).abs() < 1e-12);
    }

    fn sample(n: usize, h: i64, seed: u64) -> Vec<ProjectivePoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| ProjectivePoint::new(rng.gen_range(-h..=h), rng.gen_range(1..=h)).unwrap()).collect()
    }

    #[test]
    fn quadratic_cover_unramified_on_its_sieve() {
        let r = ip(&[1, 0, 1]);
        let c = quad_cover(&r).unwrap();
        let sieve = chebotarev_unramified_sieve(&r, 1000);
        assert!(verify_unramified(&c, &sieve.primes, &sample(500, 1000, 7)).is_empty());
    }

    #[test]
    fn cubic_cover_unramified_on_its_sieve() {
        // infinity is a branch point here, so the orbit is not transitive
        let c = CubicCover::new(&parse_bivariate("Y^3+T*Y+1").unwrap()).unwrap();
        let sieve = branch_sieve(&c, 500);
        assert!(sieve.primes.is_empty());
        assert!(verify_unramified(&c, &sieve.primes, &sample(200, 100, 11)).is_empty());

        let c = CubicCover::new(&parse_bivariate("Y^3+2*T*Y^2+T*Y+T+1").unwrap()).unwrap();
        assert!(c.flags.branch_conjugate);
        let sieve = branch_sieve(&c, 500);
        assert!(!sieve.primes.is_empty());
        assert!(verify_unramified(&c, &sieve.primes, &sample(200, 100, 11)).is_empty());
    }
}
