use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use speclab::beckmann::{consistency_check, predict};
use speclab::covers::quadratic::is_fundamental_discriminant;
use speclab::covers::{quad_cover, quad_specialize, CubicCover, GaloisCover, GroupTag};
use speclab::polynomial::{IntPolynomial, Poly};
use speclab::ProjectivePoint;

fn poly(c: &[i64]) -> IntPolynomial {
    Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

fn random_cubic(rng: &mut ChaCha8Rng, h: i64) -> Poly<IntPolynomial> {
    let mut c: Vec<IntPolynomial> = (0..3).map(|_| poly(&[rng.gen_range(-h..=h), rng.gen_range(-h..=h)])).collect();
    c.push(poly(&[1]));
    Poly::new(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quadratic_discriminants_are_fundamental(
        coeffs in prop::collection::vec(-9i64..=9, 3..=6),
        u in -500i64..=500,
        v in 1i64..=500,
    ) {
        let p = poly(&coeffs);
        prop_assume!(p.deg0() >= 1);
        let Ok(c) = quad_cover(&p) else { return Ok(()) };
        let t0 = ProjectivePoint::new(u, v).unwrap();
        prop_assume!(!c.is_branch_point(&t0));
        let r = quad_specialize(&c, &t0).unwrap();
        prop_assert!(is_fundamental_discriminant(&r.d_f));
        // same rational written with a common factor
        let again = quad_specialize(&c, &ProjectivePoint::new(3 * u, 3 * v).unwrap()).unwrap();
        prop_assert_eq!(r, again);
    }

    #[test]
    fn quadratic_ramification_matches_prediction(
        coeffs in prop::collection::vec(-9i64..=9, 3..=9),
        u in -1000i64..=1000,
        v in 1i64..=1000,
    ) {
        let p = poly(&coeffs);
        prop_assume!(p.deg0() >= 2);
        let Ok(c) = quad_cover(&p) else { return Ok(()) };
        let t0 = ProjectivePoint::new(u, v).unwrap();
        prop_assume!(!c.is_branch_point(&t0));
        let pred = predict(&c, &t0).unwrap();
        let rep = quad_specialize(&c, &t0).unwrap();
        let outside: Vec<BigInt> = rep.ramified.iter().filter(|q| !pred.superset.contains(q)).cloned().collect();
        let predicted: Vec<BigInt> = pred.predicted_ramified().into_keys().collect();
        prop_assert_eq!(outside, predicted);
    }

    #[test]
    fn s3_sextic_contains_cubic_square(a in -20i64..=20, b in -20i64..=20, t in -30i64..=30) {
        let p = Poly::new(vec![poly(&[b, 1]), poly(&[a, 0, 1]), poly(&[0]), poly(&[1])]);
        let Ok(c) = CubicCover::new(&p) else { return Ok(()) };
        let Ok(r) = c.specialize(&ProjectivePoint::integer(t)) else { return Ok(()) };
        if r.group == GroupTag::S3 {
            let dk = r.d_k.clone().unwrap();
            prop_assert!((&r.d_f % (&dk * &dk)).is_zero());
            let y = &r.d_f / (&dk * &dk);
            prop_assert!(is_fundamental_discriminant(&y) || is_fundamental_discriminant(&-y.clone()));
        }
    }

    #[test]
    fn leading_form_condition_forces_unbranched_infinity(
        c in prop::collection::vec(-6i64..=6, 6),
    ) {
        let p = Poly::new(vec![poly(&[c[0], c[1]]), poly(&[c[2], c[3]]), poly(&[c[4], c[5]]), poly(&[1])]);
        let Ok(cover) = CubicCover::new(&p) else { return Ok(()) };
        if cover.flags.leading_form_ok {
            prop_assert_eq!(cover.infinity_index, 1);
        }
        if cover.flags.branch_conjugate {
            prop_assert!(cover.flags.delta_irreducible);
        }
    }
}

#[test]
fn random_cubic_covers_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut tested = 0;
    while tested < 8 {
        let p = random_cubic(&mut rng, 5);
        let Ok(c) = CubicCover::new(&p) else { continue };
        let s = consistency_check(&c, 150, 100, tested);
        assert!(s.mismatches.is_empty(), "{}: {:?}", c.p, &s.mismatches[..s.mismatches.len().min(4)]);
        tested += 1;
    }
}
