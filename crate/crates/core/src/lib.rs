//! Galois covers of the projective line over Q, their specializations,
//! twisted superelliptic curves and the density experiments built on them.

pub mod beckmann;
pub mod bounds;
pub mod census;
pub mod covers;
pub mod error;
pub mod exactmath;
pub mod polynomial;
mod serde_util;
pub mod twistlab;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use polynomial::{BivariatePolynomial, HomogPolynomial, IntPolynomial, Poly, ProjectivePoint, RatPolynomial};
