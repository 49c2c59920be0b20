//! Quadratic covers `y^2 = P(T)` and splitting fields of monic cubics in Y,
//! with their specializations at rational points.

pub mod chebotarev;
pub mod cubic;
pub mod cubic_field;
pub mod quadratic;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::beckmann::BranchOrbit;
use crate::error::Result;
use crate::polynomial::ProjectivePoint;
use crate::serde_util;

pub use chebotarev::{branch_sieve, chebotarev_unramified_sieve, derangement_proportion, verify_unramified, ChebotarevSieve, UnramifiedViolation};
pub use cubic::{cubic_specialize, s3_survey_predicates, CubicBranch, CubicCover, SurveyFlags};
pub use cubic_field::{cubic_field_discriminant, s3_sextic_discriminant};
pub use quadratic::{quad_cover, quad_specialize, QuadraticCover};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupTag {
    Trivial,
    C2,
    C3,
    S3,
}

impl GroupTag {
    pub fn order(self) -> u32 {
        match self {
            GroupTag::Trivial => 1,
            GroupTag::C2 => 2,
            GroupTag::C3 => 3,
            GroupTag::S3 => 6,
        }
    }
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::Trivial => "trivial",
            GroupTag::C2 => "Z/2",
            GroupTag::C3 => "C3",
            GroupTag::S3 => "S3",
        })
    }
}

impl Serialize for GroupTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Invariants of the specialized field `E_{t0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecializationReport {
    pub t0: ProjectivePoint,
    pub group: GroupTag,
    /// Squarefree kernel of the quadratic discriminant, when there is a quadratic subfield in play.
    #[serde(serialize_with = "serde_util::opt_big", skip_serializing_if = "Option::is_none")]
    pub m: Option<BigInt>,
    /// Discriminant of the cubic field for C3 and S3.
    #[serde(rename = "dK", serialize_with = "serde_util::opt_big", skip_serializing_if = "Option::is_none")]
    pub d_k: Option<BigInt>,
    /// Discriminant of the specialized Galois field.
    #[serde(rename = "dF", serialize_with = "serde_util::big")]
    pub d_f: BigInt,
    #[serde(serialize_with = "serde_util::big_vec")]
    pub ramified: Vec<BigInt>,
}

/// What Beckmann prediction and the unramified sieve need from a cover.
pub trait GaloisCover: Sync {
    fn group_order(&self) -> u32;
    /// Branch points grouped into Q-conjugacy orbits, with their ramification indices.
    fn branch_orbits(&self) -> Vec<BranchOrbit>;
    /// Every irreducible form whose zeros may collide with a branch point modulo p.
    fn critical_forms(&self) -> Vec<crate::polynomial::HomogPolynomial>;
    /// Primes attached to the defining equation: content, end coefficients, discriminant.
    fn defining_primes(&self) -> BTreeSet<BigInt>;
    fn is_branch_point(&self, t0: &ProjectivePoint) -> bool;
    fn specialize(&self, t0: &ProjectivePoint) -> Result<SpecializationReport>;
}
