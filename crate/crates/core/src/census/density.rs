use num_bigint::BigInt;
use num_traits::Float;
use rayon::prelude::*;
use serde::Serialize;

use crate::covers::QuadraticCover;
use crate::error::{Error, Result};
use crate::exactmath::nfree_sieve;
use crate::twistlab::{build_curve, find_point, CurvePoint, LocalSolver, TwistedCurve, Verdict};

/// Cumulative counts over a grid of discriminant bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensitySeries {
    pub x: Vec<u64>,
    pub numerator: Vec<u64>,
    pub denominator: Vec<u64>,
    /// Members whose status is undecided; never part of `numerator`.
    pub unknown: Vec<u64>,
}

impl DensitySeries {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn lower(&self, i: usize) -> Option<f64> {
        (self.denominator[i] > 0).then(|| self.numerator[i] as f64 / self.denominator[i] as f64)
    }

    pub fn upper(&self, i: usize) -> Option<f64> {
        (self.denominator[i] > 0).then(|| (self.numerator[i] + self.unknown[i]) as f64 / self.denominator[i] as f64)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,numerator,denominator,unknown,lower,upper\n");
        for i in 0..self.len() {
            let f = |v: Option<f64>| v.map_or(String::new(), |v| format!("{v:.6}"));
            s += &format!(
                "{},{},{},{},{},{}\n",
                self.x[i],
                self.numerator[i],
                self.denominator[i],
                self.unknown[i],
                f(self.lower(i)),
                f(self.upper(i))
            );
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Found,
    Absent,
    Unknown,
}

/// One quadratic field `Q(sqrt(m))` and what is known about the twist `y^2 = m P(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistStatus {
    pub m: i64,
    /// `|d_F|` of `Q(sqrt(m))`.
    pub disc: u64,
    pub els: Verdict,
    pub point: Option<CurvePoint>,
}

impl TwistStatus {
    pub fn membership(&self) -> Membership {
        match (&self.point, self.els) {
            (Some(_), _) => Membership::Found,
            (None, Verdict::False) => Membership::Absent,
            _ => Membership::Unknown,
        }
    }
}

fn disc_abs(m: i64) -> u64 {
    if m.rem_euclid(4) == 1 {
        m.unsigned_abs()
    } else {
        4 * m.unsigned_abs()
    }
}

/// Local and height-bounded global status of every twist with `|d_F| <= x`.
pub fn classify_twists(cover: &QuadraticCover, x: u64, schedule: &[u64]) -> Result<Vec<TwistStatus>> {
    let base = build_curve(2, &cover.p)?;
    let solver = LocalSolver::new(&base);
    let ms: Vec<i64> = nfree_sieve(2, x).into_iter().filter(|&m| disc_abs(m) <= x).collect();
    ms.par_iter()
        .map(|&m| {
            let d = BigInt::from(m);
            let els = solver.els(&d)?.verdict;
            let point = if els == Verdict::False {
                None
            } else {
                find_point(&TwistedCurve { base: base.clone(), d }, schedule).map(|(p, _)| p)
            };
            Ok(TwistStatus { m, disc: disc_abs(m), els, point })
        })
        .collect()
}

fn cumulate(statuses: &[TwistStatus], grid: &[u64], classify: impl Fn(&TwistStatus) -> (bool, bool)) -> DensitySeries {
    let mut s = DensitySeries { x: grid.to_vec(), numerator: vec![0; grid.len()], denominator: vec![0; grid.len()], unknown: vec![0; grid.len()] };
    for st in statuses {
        let (num, unk) = classify(st);
        for (i, &x) in grid.iter().enumerate() {
            if st.disc <= x {
                s.denominator[i] += 1;
                s.numerator[i] += num as u64;
                s.unknown[i] += unk as u64;
            }
        }
    }
    s
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("grid must be increasing".into()));
    }
    Ok(())
}

/// `|Sp(E) ∩ S(Z/2Z, x)| / |S(Z/2Z, x)|` with undecided twists kept apart.
pub fn twist_density_series(cover: &QuadraticCover, grid: &[u64], schedule: &[u64]) -> Result<DensitySeries> {
    check_grid(grid)?;
    let Some(&xmax) = grid.last() else { return Ok(cumulate(&[], grid, |_| (false, false))) };
    let st = classify_twists(cover, xmax, schedule)?;
    Ok(twist_density_from(&st, grid))
}

pub fn twist_density_from(statuses: &[TwistStatus], grid: &[u64]) -> DensitySeries {
    cumulate(statuses, grid, |s| {
        let m = s.membership();
        (m == Membership::Found, m == Membership::Unknown)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalGlobalSeries {
    /// `Sp(f)` against all fields.
    pub global: DensitySeries,
    /// `Sp(f)^loc` against all fields.
    pub local: DensitySeries,
}

impl LocalGlobalSeries {
    /// Locally soluble twists without a known global point, at each grid value.
    pub fn gap(&self) -> Vec<u64> {
        (0..self.local.len()).map(|i| self.local.numerator[i] - self.global.numerator[i]).collect()
    }
}

pub fn local_global_ratio_series(cover: &QuadraticCover, grid: &[u64], h: u64) -> Result<LocalGlobalSeries> {
    check_grid(grid)?;
    let schedule: Vec<u64> = std::iter::successors(Some(4u64), |x| Some(x * 4)).take_while(|&x| x < h).chain([h]).collect();
    let st = match grid.last() {
        Some(&xmax) => classify_twists(cover, xmax, &schedule)?,
        None => Vec::new(),
    };
    Ok(local_global_from(&st, grid))
}

pub fn local_global_from(statuses: &[TwistStatus], grid: &[u64]) -> LocalGlobalSeries {
    LocalGlobalSeries {
        global: twist_density_from(statuses, grid),
        local: cumulate(statuses, grid, |s| (s.els == Verdict::True || s.point.is_some(), s.els == Verdict::Unknown && s.point.is_none())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogFit<T> {
    pub alpha: T,
    pub intercept: T,
    /// Root mean square of the residuals.
    pub residual: T,
}

/// Least squares of `log(ratio)` on `log log x`; `alpha` is minus the slope.
pub fn fit_log_exponent<T: Float>(x: &[T], ratio: &[T]) -> Result<LogFit<T>> {
    if x.len() != ratio.len() || x.len() < 4 {
        return Err(Error::InvalidArgument("need at least 4 paired points".into()));
    }
    if ratio.iter().any(|r| !(*r > T::zero())) {
        return Err(Error::NonPositiveRatio);
    }
    if x.iter().any(|v| !(*v > T::one().exp())) {
        return Err(Error::InvalidArgument("x must exceed e".into()));
    }
    let n = T::from(x.len()).unwrap();
    let u: Vec<T> = x.iter().map(|v| v.ln().ln()).collect();
    let w: Vec<T> = ratio.iter().map(|r| r.ln()).collect();
    let mu = u.iter().fold(T::zero(), |a, &b| a + b) / n;
    let mw = w.iter().fold(T::zero(), |a, &b| a + b) / n;
    let (mut sxy, mut sxx) = (T::zero(), T::zero());
    for (a, b) in u.iter().zip(&w) {
        sxy = sxy + (*a - mu) * (*b - mw);
        sxx = sxx + (*a - mu) * (*a - mu);
    }
    let slope = sxy / sxx;
    let intercept = mw - slope * mu;
    let ss = u.iter().zip(&w).fold(T::zero(), |acc, (a, b)| {
        let r = *b - (intercept + slope * *a);
        acc + r * r
    });
    Ok(LogFit { alpha: -slope, intercept, residual: (ss / n).sqrt() })
}

/// Fit on the upper envelope of a series, skipping empty grid points.
pub fn fit_series(series: &DensitySeries) -> Result<LogFit<f64>> {
    let (x, r): (Vec<f64>, Vec<f64>) =
        (0..series.len()).filter_map(|i| series.upper(i).map(|u| (series.x[i] as f64, u))).unzip();
    fit_log_exponent(&x, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covers::quad_cover;
    use crate::polynomial::integer::ip;

    #[test]
    fn synthetic_fits() {
        let xs: Vec<f64> = [1e3, 1e4, 1e5, 1e6, 1e7].to_vec();
        let inv: Vec<f64> = xs.iter().map(|x| 1.0 / x.ln()).collect();
        let f = fit_log_exponent(&xs, &inv).unwrap();
        assert!((f.alpha - 1.0).abs() < 0.01 && f.residual < 1e-9);
        let flat = vec![0.3f32; 5];
        let xs32: Vec<f32> = xs.iter().map(|&x| x as f32).collect();
        assert!(fit_log_exponent(&xs32, &flat).unwrap().alpha.abs() < 0.01);
        assert_eq!(fit_log_exponent(&xs, &[1.0, 0.5, 0.0, 0.1, 0.2]), Err(Error::NonPositiveRatio));
        assert!(fit_log_exponent(&xs[..3], &inv[..3]).is_err());
    }

    #[test]
    fn empty_grid_and_tiny_x() {
        let c = quad_cover(&ip(&[-2, 0, 1])).unwrap();
        assert!(twist_density_series(&c, &[], &[8]).unwrap().is_empty());
        let s = local_global_ratio_series(&c, &[1], 8).unwrap();
        assert_eq!(s.local.denominator, vec![0]);
    }

    #[test]
    fn odd_degree_is_locally_full() {
        let c = quad_cover(&ip(&[-2, 0, 0, 1])).unwrap();
        let s = local_global_ratio_series(&c, &[50, 200], 16).unwrap();
        assert_eq!(s.local.numerator, s.local.denominator);
        assert!(s.global.numerator[1] <= s.local.numerator[1]);
    }

    #[test]
    fn conic_found_matches_local() {
        // Hasse principle for conics: every locally soluble twist has a small point
        let c = quad_cover(&ip(&[-2, 0, 1])).unwrap();
        let st = classify_twists(&c, 300, &[8, 64, 256]).unwrap();
        for s in &st {
            assert_eq!(s.els == Verdict::True, s.point.is_some(), "m = {}", s.m);
        }
    }
}
