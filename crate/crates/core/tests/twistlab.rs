use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use speclab::exactmath::primes::{is_prime_u64, next_prime};
use speclab::exactmath::{is_nfree, squarefree_part};
use speclab::polynomial::integer::{has_rational_root, is_squarefree, max_root_multiplicity};
use speclab::polynomial::{discriminant, IntPolynomial, Poly};
use speclab::twistlab::*;

fn poly(c: &[i64]) -> IntPolynomial {
    Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    (0..e).fold(1u64, |acc, _| acc * b % m)
}

/// Whether the nonzero integer `x` is an n-th power in `Q_p`.
fn padic_power(x: &BigInt, p: u64, n: u32) -> bool {
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut u = x.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
        v += 1;
    }
    if v % n != 0 {
        return false;
    }
    let mut vn = 0;
    let mut k = n;
    while k as u64 % p == 0 {
        k /= p as u32;
        vn += 1;
    }
    let m = p.pow(2 * vn + 1);
    let r = u.mod_floor(&BigInt::from(m)).to_u64().unwrap();
    (1..m).filter(|y| y % p != 0).any(|y| pow_mod(y, n as u64, m) == r)
}

/// Integer points `(t : 1)` and `(1 : p z)` with `t, z < p^k` where `d F` is a nonzero n-th power.
fn brute_local(c: &TwistedCurve, p: u64, k: u32) -> bool {
    let m = p.pow(k) as i64;
    let hit = |t: i64, z: i64| {
        let v = c.rhs(&BigInt::from(t), &BigInt::from(z));
        !v.is_zero() && padic_power(&v, p, c.n())
    };
    (0..m).any(|t| hit(t, 1)) || (0..m / p as i64).any(|z| hit(1, p as i64 * z))
}

fn curve_strategy() -> impl Strategy<Value = (u32, IntPolynomial, i64)> {
    (2u32..=4, prop::collection::vec(-6i64..=6, 3..=7), -30i64..=30).prop_filter_map("valid curve", |(n, c, d)| {
        let p = poly(&c);
        if p.deg0() < 2 || d == 0 || max_root_multiplicity(&p) >= n || !is_nfree(&BigInt::from(d), n) {
            return None;
        }
        Some((n, p, d))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn certificates_are_sound(c in prop::collection::vec(-9i64..=9, 5), d in 2i64..=200, sign in prop::bool::ANY, lead in 1i64..=9) {
        let mut coeffs = c.clone();
        coeffs[4] = lead;
        let p = poly(&coeffs);
        prop_assume!(is_squarefree(&p) && !has_rational_root(&p));
        let d = squarefree_part(&BigInt::from(if sign { d } else { -d })).unwrap();
        let tc = TwistedCurve::new(build_curve(2, &p).unwrap(), d).unwrap();
        if let Some(cert) = obstruction_certificate(&tc).unwrap() {
            prop_assert!(verify_certificate(&tc, &cert));
            prop_assert!(search_points(&tc, 10_000).is_empty(), "{}", tc);
            let place = Place::Prime(cert.p.clone());
            prop_assert_eq!(local_solubility(&tc, &place, None), LocalOutcome::Insoluble);
        }
    }

    #[test]
    fn explicit_local_matches_brute_force((n, p, d) in curve_strategy(), pi in 0usize..4) {
        let prime = [2u64, 3, 5, 7][pi];
        let k = [7, 5, 3, 3][pi];
        let tc = TwistedCurve::new(build_curve(n, &p).unwrap(), BigInt::from(d)).unwrap();
        let solver = LocalSolver::new(&tc.base);
        let out = solver.explicit(&tc.d, &Place::prime(prime), None);
        let brute = brute_local(&tc, prime, k);
        if brute {
            prop_assert!(!out.is_insoluble(), "{} at {}", tc, prime);
        }
        if out.is_soluble() && is_squarefree(&p) {
            prop_assert!(brute_local(&tc, prime, k + 3), "{} at {}: {:?}", tc, prime, out);
        }
    }

    #[test]
    fn search_is_scale_invariant((n, p, d) in curve_strategy(), h in 5u64..40) {
        let tc = TwistedCurve::new(build_curve(n, &p).unwrap(), BigInt::from(d)).unwrap();
        let pts = search_points(&tc, h);
        prop_assert_eq!(&pts, &search_points_naive(&tc, h));
        for pt in &pts {
            prop_assert!(tc.contains(pt));
            prop_assert!(!pt.is_trivial());
            prop_assert!(pt.t.gcd(&pt.z) == BigInt::from(1));
            // the same point written with a common factor normalizes back
            let lam = BigInt::from(-3);
            let w = tc.base.weight;
            let scaled = CurvePoint { y: &pt.y * num_traits::pow(lam.clone(), w), t: &pt.t * &lam, z: &pt.z * &lam };
            prop_assert_eq!(&scaled.normalized(w), pt);
        }
    }

    #[test]
    fn hyperelliptic_genus(c in prop::collection::vec(-9i64..=9, 4..=10)) {
        let p = poly(&c);
        prop_assume!(p.deg0() >= 2 && p.deg0() % 2 == 0 && !discriminant(&p).is_zero());
        let cv = build_curve(2, &p).unwrap();
        prop_assert_eq!(2 * (cv.genus.unwrap() as i64 - 1), p.deg0() as i64 - 4);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn shortcut_agrees_with_explicit((n, p, d) in curve_strategy()) {
        prop_assume!(is_squarefree(&p));
        let tc = TwistedCurve::new(build_curve(n, &p).unwrap(), BigInt::from(d)).unwrap();
        let solver = LocalSolver::new(&tc.base);
        let mut q = solver.threshold.unwrap().max(2) - 1;
        let mut checked = 0;
        while checked < 5 {
            q = next_prime(q);
            let place = Place::prime(q);
            if !solver.has_good_reduction(&BigInt::from(q), &tc.d) {
                continue;
            }
            prop_assert!(is_prime_u64(q));
            prop_assert_eq!(solver.local(&tc.d, &place, None), LocalOutcome::Soluble(LocalWitness::HasseWeil));
            prop_assert!(solver.explicit(&tc.d, &place, None).is_soluble(), "{} at {}", tc, q);
            checked += 1;
        }
    }
}

#[test]
fn odd_degree_twists_are_locally_soluble() {
    let base = build_curve(2, &poly(&[-2, 0, 0, 1])).unwrap();
    for d in [-7i64, -5, -3, -2, -1, 1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15] {
        let c = TwistedCurve::new(base.clone(), BigInt::from(d)).unwrap();
        let r = everywhere_locally_soluble(&c).unwrap();
        assert_eq!(r.verdict, Verdict::True, "{c}");
        assert!(r.log.iter().all(|l| l.outcome.is_soluble()));
    }
}

#[test]
fn quartic_map_instance() {
    let base = build_curve(4, &poly(&[1, 0, 0, 0, 1])).unwrap();
    let src = TwistedCurve::new(base.clone(), BigInt::from(8)).unwrap();
    let pts = search_points(&src, 20);
    assert!(pts.contains(&CurvePoint::new(2, 1, 1)));
    let target = TwistedCurve::new(build_curve(2, &poly(&[1, 0, 0, 0, 1])).unwrap(), BigInt::from(2)).unwrap();
    for pt in &pts {
        let img = map_twist_point(&base, &BigInt::from(2), pt).unwrap();
        assert!(target.contains(&img), "{pt} -> {img}");
    }
}
