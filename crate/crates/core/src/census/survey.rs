use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::covers::{s3_survey_predicates, SurveyFlags};
use crate::error::{Error, Result};
use crate::polynomial::{BivariatePolynomial, IntPolynomial, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Proportion {
    pub hits: u64,
    pub total: u64,
    pub value: f64,
    /// Half-width of the 95% normal interval.
    pub radius: f64,
}

impl Proportion {
    pub fn new(hits: u64, total: u64) -> Self {
        let value = if total == 0 { 0.0 } else { hits as f64 / total as f64 };
        let radius = if total == 0 { 0.0 } else { 1.96 * (value * (1.0 - value) / total as f64).sqrt() };
        Proportion { hits, total, value, radius }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyReport {
    pub degree: usize,
    pub height: u64,
    pub exhaustive: bool,
    pub seed: u64,
    pub galois_s3_over_qt: Proportion,
    pub delta_irreducible: Proportion,
    pub leading_form_ok: Proportion,
    pub branch_conjugate: Proportion,
    pub regular: Proportion,
    pub all_flags: Proportion,
}

/// `Y^3 + a2(T) Y^2 + a1(T) Y + a0(T)` from `3 (D + 1)` coefficients, `a0` first.
fn cubic_from(coeffs: &[i64], d: usize) -> BivariatePolynomial {
    let mut ys: Vec<IntPolynomial> =
        coeffs.chunks(d + 1).map(|c| Poly::new(c.iter().map(|&x| BigInt::from(x)).collect())).collect();
    ys.push(Poly::constant(BigInt::from(1)));
    Poly::new(ys)
}

fn all_flags(f: &SurveyFlags) -> bool {
    f.galois_s3_over_qt && f.delta_irreducible && f.leading_form_ok && f.branch_conjugate && f.regular
}

/// Flags of `Q(3, D, H)`: sample `i` is drawn from stream `i` of the seeded generator.
pub fn s3_survey(d: usize, h: u64, sample: u64, seed: u64) -> Result<SurveyReport> {
    if h == 0 {
        return Err(Error::InvalidArgument("height 0 leaves only Y^3".into()));
    }
    let k = 3 * (d + 1);
    let width = 2 * h + 1;
    let total = width.checked_pow(k as u32);
    let exhaustive = total.is_some_and(|t| t <= sample);
    let count = if exhaustive { total.unwrap() } else { sample };
    let hi = h as i64;
    let flags: Vec<SurveyFlags> = (0..count)
        .into_par_iter()
        .map(|i| {
            let coeffs: Vec<i64> = if exhaustive {
                let mut r = i;
                (0..k)
                    .map(|_| {
                        let c = (r % width) as i64 - hi;
                        r /= width;
                        c
                    })
                    .collect()
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                (0..k).map(|_| rng.gen_range(-hi..=hi)).collect()
            };
            s3_survey_predicates(&cubic_from(&coeffs, d))
        })
        .collect();
    let prop = |f: fn(&SurveyFlags) -> bool| Proportion::new(flags.iter().filter(|x| f(x)).count() as u64, count);
    Ok(SurveyReport {
        degree: d,
        height: h,
        exhaustive,
        seed,
        galois_s3_over_qt: prop(|f| f.galois_s3_over_qt),
        delta_irreducible: prop(|f| f.delta_irreducible),
        leading_form_ok: prop(|f| f.leading_form_ok),
        branch_conjugate: prop(|f| f.branch_conjugate),
        regular: prop(|f| f.regular),
        all_flags: prop(all_flags),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_height_rejected() {
        assert!(s3_survey(1, 0, 100, 1).is_err());
    }

    #[test]
    fn seeded_runs_repeat() {
        let a = s3_survey(1, 5, 300, 7).unwrap();
        assert_eq!(a, s3_survey(1, 5, 300, 7).unwrap());
        assert!(!a.exhaustive);
        assert!(a.all_flags.value <= a.galois_s3_over_qt.value);
    }

    #[test]
    fn exhaustive_small_box() {
        let r = s3_survey(0, 1, 1000, 0).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.all_flags.total, 27);
    }
}
