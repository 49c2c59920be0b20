//! Real root counting by Sturm sequences.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::dense::Poly;
use super::integer::{squarefree_decomposition, to_rational};
use super::{IntPolynomial, RatPolynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RealRootReport {
    /// Distinct real roots.
    pub real_roots: usize,
    pub takes_positive_values: bool,
    pub takes_negative_values: bool,
}

fn rat_rem(a: &RatPolynomial, b: &RatPolynomial) -> RatPolynomial {
    let db = b.deg0();
    let lb = b.lc();
    let mut r = a.clone();
    while !r.is_zero() && r.deg0() >= db {
        let c = r.lc() / &lb;
        let shift = Poly::monomial(c, r.deg0() - db);
        r = r - &shift * b;
    }
    r
}

fn sturm_chain(f: &RatPolynomial) -> Vec<RatPolynomial> {
    let mut chain = vec![f.clone(), f.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = rat_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sign_at_pos_inf(p: &RatPolynomial) -> i32 {
    if p.is_zero() {
        0
    } else if p.lc().is_positive() {
        1
    } else {
        -1
    }
}

fn sign_at_neg_inf(p: &RatPolynomial) -> i32 {
    let s = sign_at_pos_inf(p);
    if p.deg0() % 2 == 1 {
        -s
    } else {
        s
    }
}

/// Distinct real roots of a squarefree polynomial.
pub fn count_real_roots_squarefree(f: &RatPolynomial) -> usize {
    if f.deg0() == 0 {
        return 0;
    }
    let chain = sturm_chain(f);
    let neg = sign_changes(chain.iter().map(sign_at_neg_inf));
    let pos = sign_changes(chain.iter().map(sign_at_pos_inf));
    neg - pos
}

/// Real roots in the half-open interval (a, b].
pub fn count_real_roots_in(f: &RatPolynomial, a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(f);
    let at = |x: &BigRational| {
        sign_changes(chain.iter().map(|p| {
            let v = p.eval(x);
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        }))
    };
    at(a).saturating_sub(at(b))
}

pub fn real_roots_sign_analysis(f: &IntPolynomial) -> RealRootReport {
    if f.is_zero() {
        return RealRootReport { real_roots: 0, takes_positive_values: false, takes_negative_values: false };
    }
    let fr = to_rational(f);
    let parts = squarefree_decomposition(f);
    let mut roots = 0;
    let mut odd_roots = 0;
    for (g, k) in &parts {
        let c = count_real_roots_squarefree(&to_rational(g));
        roots += c;
        if k % 2 == 1 {
            odd_roots += c;
        }
    }
    let s_pos = sign_at_pos_inf(&fr);
    let s_neg = sign_at_neg_inf(&fr);
    let changes = odd_roots > 0;
    RealRootReport {
        real_roots: roots,
        takes_positive_values: s_pos > 0 || s_neg > 0 || changes,
        takes_negative_values: s_pos < 0 || s_neg < 0 || changes,
    }
}

#[cfg(test)]
mod tests {
    use super::super::integer::ip;
    use super::*;

    #[test]
    fn examples() {
        let r = real_roots_sign_analysis(&ip(&[-2, 0, 1]));
        assert_eq!((r.real_roots, r.takes_positive_values), (2, true));
        let r = real_roots_sign_analysis(&ip(&[-1, 0, -1]));
        assert_eq!((r.real_roots, r.takes_positive_values), (0, false));
        let r = real_roots_sign_analysis(&ip(&[-2, 0, 0, 1]));
        assert_eq!((r.real_roots, r.takes_positive_values), (1, true));
    }

    #[test]
    fn even_multiplicity_does_not_change_sign() {
        // -(x-1)^2 (x^2+1)
        let f = -(ip(&[-1, 1]).pow(2) * ip(&[1, 0, 1]));
        let r = real_roots_sign_analysis(&f);
        assert_eq!(r.real_roots, 1);
        assert!(!r.takes_positive_values);
        // -(x-1)^3 changes sign
        let r = real_roots_sign_analysis(&-(ip(&[-1, 1]).pow(3)));
        assert!(r.takes_positive_values);
    }

    #[test]
    fn chebyshev_like_roots() {
        // (x-1)(x-2)(x-3)(x+4)
        let f = ip(&[-1, 1]) * ip(&[-2, 1]) * ip(&[-3, 1]) * ip(&[4, 1]);
        assert_eq!(real_roots_sign_analysis(&f).real_roots, 4);
        let fr = to_rational(&f);
        let a = BigRational::from_integer(0.into());
        let b = BigRational::from_integer(2.into());
        assert_eq!(count_real_roots_in(&fr, &a, &b), 2);
    }
}
