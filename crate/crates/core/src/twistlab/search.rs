//! Height-bounded search for nontrivial points, filtered by residue tables.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::curve::{CurvePoint, TwistedCurve};
use crate::exactmath::{exact_root, factorize};

const POWER_MODULI: [u64; 30] = [
    64, 27, 25, 49, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113,
];
const MAX_TABLES: usize = 14;
const MAX_DIVISOR_PRIME: u64 = 1500;

/// `bits` holds, for each residue `b` of `v`, a row of admissible residues of `u`
/// padded by 64 wrapped entries so that any 64-wide window is two word reads.
struct Table {
    m: u64,
    words: usize,
    bits: Vec<u64>,
    density: f64,
}

impl Table {
    fn build(m: u64, allowed: impl Fn(u64, u64) -> bool) -> Table {
        let mu = m as usize;
        let words = (mu + 64).div_ceil(64) + 1;
        let mut bits = vec![0u64; words * mu];
        let mut hits = 0usize;
        let mut row = vec![false; mu];
        for b in 0..m {
            for a in 0..m {
                row[a as usize] = allowed(a, b);
            }
            hits += row.iter().filter(|&&x| x).count();
            let base = b as usize * words;
            for j in 0..mu + 64 {
                if row[j % mu] {
                    bits[base + j / 64] |= 1u64 << (j % 64);
                }
            }
        }
        Table { m, words, bits, density: hits as f64 / (mu * mu) as f64 }
    }

    #[inline]
    fn window(&self, row: usize, s: usize) -> u64 {
        let w = row + s / 64;
        let sh = s % 64;
        if sh == 0 {
            self.bits[w]
        } else {
            (self.bits[w] >> sh) | (self.bits[w + 1] << (64 - sh))
        }
    }
}

fn power_residues(n: u32, m: u64) -> Vec<bool> {
    let mut ok = vec![false; m as usize];
    for y in 0..m {
        let mut acc = 1u64;
        for _ in 0..n {
            acc = acc * y % m;
        }
        ok[acc as usize] = true;
    }
    ok
}

/// Values of `F` at all residue pairs, row-major in `v`.
fn form_values(coeffs: &[u64], m: u64) -> Vec<u64> {
    let deg = coeffs.len() - 1;
    let mut out = vec![0u64; (m * m) as usize];
    let mut bpow = vec![1u64; deg + 1];
    for b in 0..m {
        for k in 1..=deg {
            bpow[k] = bpow[k - 1] * b % m;
        }
        for a in 0..m {
            let mut acc = coeffs[deg];
            for i in (0..deg).rev() {
                acc = (acc * a + coeffs[i] * bpow[deg - i]) % m;
            }
            out[(b * m + a) as usize] = acc;
        }
    }
    out
}

fn reduce(x: &BigInt, m: u64) -> u64 {
    x.mod_floor(&BigInt::from(m)).to_u64().unwrap()
}

pub(crate) struct Sieve {
    tables: Vec<Table>,
}

impl Sieve {
    pub(crate) fn for_curve(c: &TwistedCurve) -> Sieve {
        let n = c.n();
        let form = c.base.form.coeffs();
        let mut tables = Vec::new();
        for &m in &POWER_MODULI {
            let res = power_residues(n, m);
            if res.iter().all(|&x| x) {
                continue;
            }
            let coeffs: Vec<u64> = form.iter().map(|x| reduce(x, m)).collect();
            let vals = form_values(&coeffs, m);
            let dm = reduce(&c.d, m);
            let t = Table::build(m, |a, b| res[(dm * vals[(b * m + a) as usize] % m) as usize]);
            if t.density < 0.9 {
                tables.push(t);
            }
        }
        // for p | d with v_p(d) not divisible by n, p must divide F(u, v)
        for (p, e) in factorize(&c.d) {
            let Some(p) = p.to_u64() else { continue };
            if p > MAX_DIVISOR_PRIME || e % n == 0 {
                continue;
            }
            let coeffs: Vec<u64> = form.iter().map(|x| reduce(x, p)).collect();
            let vals = form_values(&coeffs, p);
            tables.push(Table::build(p, |a, b| vals[(b * p + a) as usize] == 0));
        }
        tables.sort_by(|a, b| a.density.total_cmp(&b.density));
        tables.truncate(MAX_TABLES);
        Sieve { tables }
    }

    /// Scans coprime `(u, v)` with `v` in `[v_lo, v_hi]` and `u` in `[u_lo, u_hi]`.
    fn scan(&self, c: &TwistedCurve, v_lo: i64, v_hi: i64, u_lo: i64, u_hi: i64, stop_first: bool, out: &mut Vec<CurvePoint>) {
        if u_lo > u_hi {
            return;
        }
        let mut rows = vec![0usize; self.tables.len()];
        let mut starts = vec![0usize; self.tables.len()];
        for v in v_lo..=v_hi {
            for (k, t) in self.tables.iter().enumerate() {
                rows[k] = (v.rem_euclid(t.m as i64) as usize) * t.words;
                starts[k] = u_lo.rem_euclid(t.m as i64) as usize;
            }
            let mut u0 = u_lo;
            while u0 <= u_hi {
                let span = (u_hi - u0 + 1).min(64);
                let mut mask = if span == 64 { !0u64 } else { (1u64 << span) - 1 };
                for (k, t) in self.tables.iter().enumerate() {
                    if mask == 0 {
                        break;
                    }
                    mask &= t.window(rows[k], starts[k]);
                }
                while mask != 0 {
                    let bit = mask.trailing_zeros() as i64;
                    mask &= mask - 1;
                    let u = u0 + bit;
                    if u.gcd(&v) != 1 {
                        continue;
                    }
                    if test_pair(c, &BigInt::from(u), &BigInt::from(v), out) && stop_first {
                        return;
                    }
                }
                for (k, t) in self.tables.iter().enumerate() {
                    starts[k] = (starts[k] + 64) % t.m as usize;
                }
                u0 += 64;
            }
        }
    }
}

/// Exact n-th power test at one coprime pair; pushes every nontrivial point found.
fn test_pair(c: &TwistedCurve, u: &BigInt, v: &BigInt, out: &mut Vec<CurvePoint>) -> bool {
    let val = c.rhs(u, v);
    if val.is_zero() {
        return false;
    }
    let Some(y) = exact_root(&val, c.n()) else { return false };
    let w = c.base.weight;
    out.push(CurvePoint { y: y.clone(), t: u.clone(), z: v.clone() }.normalized(w));
    if c.n() % 2 == 0 {
        out.push(CurvePoint { y: -y, t: u.clone(), z: v.clone() }.normalized(w));
    }
    true
}

fn sort_points(pts: &mut Vec<CurvePoint>) {
    pts.sort_by(|a, b| (a.height(), &a.z, &a.t, &a.y).cmp(&(b.height(), &b.z, &b.t, &b.y)));
    pts.dedup();
}

/// Every nontrivial point `[y : u : v]` with `max(|u|, |v|) <= h`, including the line `z = 0`.
pub fn search_points(c: &TwistedCurve, h: u64) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    test_pair(c, &BigInt::from(1), &BigInt::zero(), &mut out);
    if h == 0 {
        return out;
    }
    let sieve = Sieve::for_curve(c);
    let h = h as i64;
    let chunk = 128i64;
    let starts: Vec<i64> = (1..=h).step_by(chunk as usize).collect();
    let parts: Vec<Vec<CurvePoint>> = starts
        .par_iter()
        .map(|&lo| {
            let mut v = Vec::new();
            sieve.scan(c, lo, (lo + chunk - 1).min(h), -h, h, false, &mut v);
            v
        })
        .collect();
    out.extend(parts.into_iter().flatten());
    sort_points(&mut out);
    out
}

/// First point found while the height bound runs through `schedule`; each stage
/// scans only the pairs not covered by the previous one.
pub fn find_point(c: &TwistedCurve, schedule: &[u64]) -> Option<(CurvePoint, u64)> {
    let mut out = Vec::new();
    if test_pair(c, &BigInt::from(1), &BigInt::zero(), &mut out) {
        return Some((out.swap_remove(0), 0));
    }
    let sieve = Sieve::for_curve(c);
    let mut prev = 0i64;
    for &h in schedule {
        let h = h as i64;
        if h <= prev {
            continue;
        }
        if prev > 0 {
            sieve.scan(c, 1, prev, -h, -prev - 1, true, &mut out);
            if out.is_empty() {
                sieve.scan(c, 1, prev, prev + 1, h, true, &mut out);
            }
        }
        if out.is_empty() {
            sieve.scan(c, prev + 1, h, -h, h, true, &mut out);
        }
        if let Some(pt) = out.into_iter().next() {
            return Some((pt, h as u64));
        }
        out = Vec::new();
        prev = h;
    }
    None
}

/// Plain enumeration without tables, for cross-checks.
pub fn search_points_naive(c: &TwistedCurve, h: u64) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    test_pair(c, &BigInt::from(1), &BigInt::zero(), &mut out);
    let h = h as i64;
    for v in 1..=h {
        for u in -h..=h {
            if u.gcd(&v) == 1 {
                test_pair(c, &BigInt::from(u), &BigInt::from(v), &mut out);
            }
        }
    }
    sort_points(&mut out);
    out
}
