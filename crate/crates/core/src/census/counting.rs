use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::covers::quad_cover;
use crate::error::{Error, Result};
use crate::exactmath::nfree_flags;
use crate::polynomial::integer::max_root_multiplicity;
use crate::polynomial::IntPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyCounts {
    pub n: u32,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub h: u64,
    /// `|P(n, N, H)|`
    pub p: u64,
    /// `|P_2(n, N, H)|`: squarefree content as well.
    pub p2: u64,
    /// `(r, |E(r, H)|)` with `r` the even number among `N, N + 1`, for `n = 2`.
    pub e: Option<(usize, u64)>,
}

/// Counts `(|P(n,N,H)|, |P_2(n,N,H)|)` over all coefficient vectors with `a_N != 0`.
fn count_pair(n: u32, big_n: usize, h: u64, flags: &[bool]) -> (u64, u64) {
    let hi = h as i64;
    let width = 2 * h + 1;
    let total = width.pow(big_n as u32 + 1);
    let mut p = 0u64;
    let mut p2 = 0u64;
    let mut coeffs = vec![0i64; big_n + 1];
    for idx in 0..total {
        let mut r = idx;
        for c in coeffs.iter_mut() {
            *c = (r % width) as i64 - hi;
            r /= width;
        }
        if coeffs[big_n] == 0 {
            continue;
        }
        let member = match big_n {
            1 => true,
            // a double root of a quadratic is the only way to exceed multiplicity 1
            2 => n >= 3 || coeffs[1] * coeffs[1] != 4 * coeffs[0] * coeffs[2],
            _ => {
                let poly = IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect());
                max_root_multiplicity(&poly) < n
            }
        };
        if !member {
            continue;
        }
        p += 1;
        let content = coeffs.iter().fold(0i64, |g, &c| g.gcd(&c)) as u64;
        if flags[content as usize] {
            p2 += 1;
        }
    }
    (p, p2)
}

pub fn count_poly_sets(n: u32, big_n: usize, h: u64) -> Result<PolyCounts> {
    if n < 2 || big_n == 0 || h == 0 {
        return Err(Error::InvalidArgument(format!("count_poly_sets({n}, {big_n}, {h})")));
    }
    let flags = nfree_flags(2, h);
    let (p, p2) = count_pair(n, big_n, h, &flags);
    let e = (n == 2).then(|| {
        let r = big_n + big_n % 2;
        let (lo, hi) = if r == big_n { (count_pair(2, r - 1, h, &flags).1, p2) } else { (p2, count_pair(2, r, h, &flags).1) };
        (r, lo + hi)
    });
    Ok(PolyCounts { n, big_n, h, p, p2, e })
}

/// `|E(r, H)|` by building every cover of height at most `H` and counting its branch points.
pub fn count_extensions_direct(r: usize, h: u64) -> u64 {
    let hi = h as i64;
    let width = 2 * h + 1;
    let mut count = 0;
    for idx in 0..width.pow(r as u32 + 1) {
        let mut rem = idx;
        let coeffs: Vec<BigInt> = (0..=r)
            .map(|_| {
                let c = (rem % width) as i64 - hi;
                rem /= width;
                BigInt::from(c)
            })
            .collect();
        let poly = IntPolynomial::new(coeffs);
        if poly.degree().is_some_and(|d| d >= 1) && quad_cover(&poly).is_ok_and(|c| c.r == r) {
            count += 1;
        }
    }
    count
}

/// Fundamental discriminants `D != 1` with `|D| <= x`, ascending.
pub fn quad_field_census(x: u64) -> Vec<i64> {
    let flags = nfree_flags(2, x);
    let mut out = Vec::new();
    for m in 1..=x as i64 {
        for d in [m, -m] {
            if d == 1 || !flags[m as usize] {
                continue;
            }
            let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
            if disc.unsigned_abs() <= x {
                out.push(disc);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `6 x / pi^2`, the main term for the number of fundamental discriminants up to `x`.
pub fn quad_field_main_term(x: u64) -> f64 {
    6.0 * x as f64 / (std::f64::consts::PI * std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_census() {
        assert_eq!(quad_field_census(10), vec![-8, -7, -4, -3, 5, 8]);
        assert_eq!(quad_field_census(4), vec![-4, -3]);
        assert!(quad_field_census(1).is_empty());
    }

    #[test]
    fn census_main_term() {
        for x in [10_000u64, 100_000] {
            let c = quad_field_census(x).len() as f64;
            assert!((c / quad_field_main_term(x) - 1.0).abs() < 0.01, "{x}: {c}");
        }
    }

    #[test]
    fn pinned_counts() {
        let c = count_poly_sets(2, 2, 2).unwrap();
        assert_eq!((c.p, c.p2, c.e), (92, 92, Some((2, 112))));
    }

    #[test]
    fn extension_identity() {
        for h in 1..=3 {
            let c = count_poly_sets(2, 2, h).unwrap();
            assert_eq!(c.e.unwrap().1, count_extensions_direct(2, h), "H = {h}");
        }
    }
}
