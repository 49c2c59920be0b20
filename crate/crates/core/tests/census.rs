use speclab::census::*;
use speclab::covers::quad_cover;
use speclab::polynomial::integer::ip;
use speclab::twistlab::Verdict;

#[test]
fn extension_identity_small_heights() {
    for h in 1..=5 {
        let c = count_poly_sets(2, 2, h).unwrap();
        let (r, e) = c.e.unwrap();
        assert_eq!(r, 2);
        let lower = count_poly_sets(2, 1, h).unwrap().p2;
        assert_eq!(e, c.p2 + lower, "H = {h}");
        assert_eq!(count_extensions_direct(2, h), e, "H = {h}");
    }
}

#[test]
fn cubic_scaling_and_content() {
    let a = count_poly_sets(2, 2, 50).unwrap();
    let b = count_poly_sets(2, 2, 100).unwrap();
    assert_eq!((b.p, b.p2, b.e), (8_079_096, 7_937_076, Some((2, 7_974_154))));
    let ra = a.p2 as f64 / 50f64.powi(3);
    let rb = b.p2 as f64 / 100f64.powi(3);
    assert!((ra / rb - 1.0).abs() < 0.05, "{ra} {rb}");
    let zeta6_inv = 945.0 / std::f64::consts::PI.powi(6);
    let share = b.p2 as f64 / b.p as f64;
    assert!((share / zeta6_inv - 1.0).abs() < 0.02, "{share}");
}

#[test]
fn conic_control_pinned() {
    let c = quad_cover(&ip(&[-2, 0, 1])).unwrap();
    let s = twist_density_series(&c, &[100, 1000], &[16, 64, 256]).unwrap();
    assert_eq!(s.numerator, [19, 158]);
    assert_eq!(s.denominator, [61, 607]);
    assert_eq!(s.unknown, [0, 0]);
}

#[test]
fn octic_gap_widens() {
    let p = ip(&[1, 0, 1]) * ip(&[-2, 0, 1]) * ip(&[2, 0, 0, 0, 1]);
    let c = quad_cover(&p).unwrap();
    let s = local_global_ratio_series(&c, &[100, 1000, 10_000], 256).unwrap();
    assert_eq!(s.global.numerator, [3, 4, 7]);
    assert_eq!(s.local.numerator, [50, 505, 5070]);
    assert_eq!(s.local.unknown, [0, 0, 0]);
    let gap = s.gap();
    assert_eq!(gap, [47, 501, 5063]);
    assert!(gap.windows(2).all(|w| w[0] < w[1]));
    for series in [&s.global, &s.local] {
        for i in 0..series.len() {
            assert!(series.numerator[i] + series.unknown[i] <= series.denominator[i]);
        }
        for w in 0..series.len() - 1 {
            assert!(series.numerator[w] <= series.numerator[w + 1]);
            assert!(series.denominator[w] <= series.denominator[w + 1]);
        }
    }
}

#[test]
fn statuses_are_consistent() {
    let c = quad_cover(&ip(&[1, 1, 0, 0, 0, 0, 1])).unwrap();
    for st in classify_twists(&c, 500, &[16, 64]).unwrap() {
        if st.point.is_some() {
            assert_ne!(st.els, Verdict::False, "m = {}", st.m);
        }
        assert!(st.disc <= 500);
    }
}

#[test]
fn survey_trend() {
    let lo = s3_survey(1, 5, 10_000, 1).unwrap();
    let hi = s3_survey(1, 20, 10_000, 1).unwrap();
    assert_eq!((lo.all_flags.hits, hi.all_flags.hits), (6081, 8723));
    assert!(hi.all_flags.value > lo.all_flags.value);
    assert!(s3_survey(1, 0, 10, 1).is_err());
}
