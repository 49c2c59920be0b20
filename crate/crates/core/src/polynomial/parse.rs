//! Text format: sums of terms like `3*T^2`, `-T*Y^2`, `5`, `T^4+1`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::dense::Poly;
use super::{BivariatePolynomial, IntPolynomial};
use crate::error::{Error, Result};

/// Sparse terms keyed by (T-degree, Y-degree).
fn parse_terms(src: &str) -> Result<BTreeMap<(usize, usize), BigInt>> {
    let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut terms: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
    let err = |msg: &str| Error::Parse(format!("{msg} in '{src}'"));
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        let mut coeff = BigInt::one();
        let mut saw_any = false;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i > start {
            coeff = s[start..i].parse().map_err(|_| err("bad coefficient"))?;
            saw_any = true;
        }
        let (mut dt, mut dy) = (0usize, 0usize);
        loop {
            if i < bytes.len() && bytes[i] == b'*' {
                if !saw_any {
                    return Err(err("dangling '*'"));
                }
                i += 1;
            }
            if i >= bytes.len() {
                break;
            }
            let var = bytes[i];
            let is_t = matches!(var, b'T' | b't' | b'x' | b'X');
            let is_y = matches!(var, b'Y' | b'y');
            if !is_t && !is_y {
                if var == b'+' || var == b'-' {
                    break;
                }
                return Err(err(&format!("unexpected '{}'", var as char)));
            }
            i += 1;
            let mut e = 1usize;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let st = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if st == i {
                    return Err(err("missing exponent"));
                }
                e = s[st..i].parse().map_err(|_| err("bad exponent"))?;
            }
            if is_t {
                dt += e;
            } else {
                dy += e;
            }
            saw_any = true;
        }
        if !saw_any {
            return Err(err("empty term"));
        }
        *terms.entry((dt, dy)).or_insert_with(BigInt::zero) += sign * coeff;
    }
    Ok(terms)
}

pub fn parse_poly(src: &str) -> Result<IntPolynomial> {
    let terms = parse_terms(src)?;
    if terms.keys().any(|&(_, dy)| dy > 0) {
        return Err(Error::Parse(format!("unexpected Y in univariate polynomial '{src}'")));
    }
    let deg = terms.keys().map(|k| k.0).max().unwrap_or(0);
    let mut c = vec![BigInt::zero(); deg + 1];
    for ((dt, _), a) in terms {
        c[dt] += a;
    }
    Ok(Poly::new(c))
}

/// Polynomial in Y whose coefficients are polynomials in T.
pub fn parse_bivariate(src: &str) -> Result<BivariatePolynomial> {
    let terms = parse_terms(src)?;
    let dy = terms.keys().map(|k| k.1).max().unwrap_or(0);
    let dt = terms.keys().map(|k| k.0).max().unwrap_or(0);
    let mut grid = vec![vec![BigInt::zero(); dt + 1]; dy + 1];
    for ((i, j), a) in terms {
        grid[j][i] += a;
    }
    Ok(Poly::new(grid.into_iter().map(Poly::new).collect()))
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(BigInt, String)]) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
        let mag = c.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono.clone()
        } else {
            format!("{mag}*{mono}")
        };
        write!(f, "{sign}{body}")?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for Poly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigInt, String)> =
            self.coeffs().iter().enumerate().rev().map(|(i, c)| (c.clone(), power("T", i))).collect();
        write_terms(f, &terms)
    }
}

impl fmt::Display for Poly<Poly<BigInt>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (j, cj) in self.coeffs().iter().enumerate().rev() {
            for (i, c) in cj.coeffs().iter().enumerate().rev() {
                let mono = match (power("T", i), power("Y", j)) {
                    (a, b) if a.is_empty() => b,
                    (a, b) if b.is_empty() => a,
                    (a, b) => format!("{a}*{b}"),
                };
                terms.push((c.clone(), mono));
            }
        }
        write_terms(f, &terms)
    }
}

impl serde::Serialize for Poly<BigInt> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::super::integer::ip;
    use super::*;

    #[test]
    fn univariate_round_trip() {
        let f = parse_poly("T^2-2").unwrap();
        assert_eq!(f, ip(&[-2, 0, 1]));
        assert_eq!(f.to_string(), "T^2-2");
        let g = parse_poly(" -4*T^3 - 27*T^2 ").unwrap();
        assert_eq!(g, ip(&[0, 0, -27, -4]));
        assert_eq!(parse_poly(&g.to_string()).unwrap(), g);
        assert_eq!(parse_poly("3").unwrap(), ip(&[3]));
        assert_eq!(parse_poly("2T+T").unwrap(), ip(&[0, 3]));
    }

    #[test]
    fn bivariate_terms() {
        let p = parse_bivariate("Y^3+T*Y+T").unwrap();
        assert_eq!(p.deg0(), 3);
        assert_eq!(p.coeff(1), ip(&[0, 1]));
        assert_eq!(p.coeff(0), ip(&[0, 1]));
        assert_eq!(p.coeff(3), ip(&[1]));
        assert_eq!(p.to_string(), "Y^3+T*Y+T");
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("T^").is_err());
        assert!(parse_poly("3*Z").is_err());
        assert!(parse_poly("*T").is_err());
        assert!(parse_poly("Y+1").is_err());
    }
}
