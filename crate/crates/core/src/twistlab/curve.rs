use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::is_nfree;
use crate::polynomial::integer::{is_squarefree, max_root_multiplicity};
use crate::polynomial::{HomogPolynomial, IntPolynomial};
use crate::serde_util;

/// `y^n = P(t, z)` in the weighted projective plane with weights `(w, 1, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuperellipticCurve {
    pub n: u32,
    #[serde(serialize_with = "serde_util::display")]
    pub p: IntPolynomial,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub weight: usize,
    pub genus: Option<u64>,
    /// `P_hom(t, z) * z^(n*w - N)`, homogeneous of degree `n*w`.
    #[serde(skip)]
    pub form: HomogPolynomial,
}

pub fn build_curve(n: u32, p: &IntPolynomial) -> Result<SuperellipticCurve> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n = {n} < 2")));
    }
    let big_n = p.degree().ok_or(Error::ZeroInput("build_curve"))?;
    if big_n == 0 {
        return Err(Error::InvalidArgument("constant polynomial".into()));
    }
    if max_root_multiplicity(p) >= n {
        return Err(Error::NotInPnN(n));
    }
    let nu = n as usize;
    let weight = big_n.div_ceil(nu);
    let genus = is_squarefree(p).then(|| {
        let two_g_minus_2 = -2 * n as i64 + big_n as i64 * (n as i64 - 1) + n as i64 - big_n.gcd(&nu) as i64;
        ((two_g_minus_2 + 2) / 2) as u64
    });
    let form = HomogPolynomial::from_poly(p, nu * weight);
    Ok(SuperellipticCurve { n, p: p.clone(), big_n, weight, genus, form })
}

impl SuperellipticCurve {
    pub fn n_divides_degree(&self) -> bool {
        self.big_n % self.n as usize == 0
    }

    pub fn is_separable(&self) -> bool {
        self.genus.is_some()
    }
}

/// `y^n = d * P(t, z)` for an n-free `d`, or `d = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedCurve {
    pub base: SuperellipticCurve,
    #[serde(serialize_with = "serde_util::big")]
    pub d: BigInt,
}

impl TwistedCurve {
    pub fn new(base: SuperellipticCurve, d: BigInt) -> Result<Self> {
        if !d.is_one() && !is_nfree(&d, base.n) {
            return Err(Error::InvalidArgument(format!("d = {d} is not {}-free", base.n)));
        }
        Ok(TwistedCurve { base, d })
    }

    pub fn untwisted(base: SuperellipticCurve) -> Self {
        TwistedCurve { base, d: BigInt::one() }
    }

    pub fn n(&self) -> u32 {
        self.base.n
    }

    /// `d * F(t, z)`.
    pub fn rhs(&self, t: &BigInt, z: &BigInt) -> BigInt {
        &self.d * self.base.form.eval_uv(t, z)
    }

    pub fn contains(&self, pt: &CurvePoint) -> bool {
        !(pt.t.is_zero() && pt.z.is_zero()) && num_traits::pow(pt.y.clone(), self.n() as usize) == self.rhs(&pt.t, &pt.z)
    }
}

impl std::fmt::Display for TwistedCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "y^{} = {}*({})", self.base.n, self.d, self.base.p)
    }
}

/// Integral representative `[y : t : z]` with `gcd(t, z) = 1`, `z >= 0`, and `t = 1` when `z = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurvePoint {
    #[serde(serialize_with = "serde_util::big")]
    pub y: BigInt,
    #[serde(serialize_with = "serde_util::big")]
    pub t: BigInt,
    #[serde(serialize_with = "serde_util::big")]
    pub z: BigInt,
}

impl CurvePoint {
    pub fn new(y: impl Into<BigInt>, t: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        CurvePoint { y: y.into(), t: t.into(), z: z.into() }
    }

    pub fn is_trivial(&self) -> bool {
        self.y.is_zero()
    }

    /// Removes `g = gcd(t, z)` (which must satisfy `g^w | y`) and fixes the sign with `lambda = -1`.
    pub fn normalized(&self, weight: usize) -> Self {
        let g = self.t.gcd(&self.z);
        let mut pt = self.clone();
        if !g.is_zero() && !g.is_one() {
            let gw = num_traits::pow(g.clone(), weight);
            if (&pt.y % &gw).is_zero() {
                pt = CurvePoint { y: &pt.y / gw, t: &pt.t / &g, z: &pt.z / &g };
            }
        }
        if pt.z.is_negative() || (pt.z.is_zero() && pt.t.is_negative()) {
            pt.t = -pt.t;
            pt.z = -pt.z;
            if weight % 2 == 1 {
                pt.y = -pt.y;
            }
        }
        pt
    }

    pub fn height(&self) -> BigInt {
        self.t.abs().max(self.z.abs())
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}:{}:{}]", self.y, self.t, self.z)
    }
}
