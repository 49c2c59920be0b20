//! Twists `y^n = d * P(t, z)`: point search, local solubility, obstructions and scans.

pub mod certificate;
pub mod curve;
pub mod local;
pub mod scan;
pub mod search;

pub use certificate::{map_twist_point, obstruction_certificate, verify_certificate, ObstructionCertificate};
pub use curve::{build_curve, CurvePoint, SuperellipticCurve, TwistedCurve};
pub use local::{
    everywhere_locally_soluble, hasse_weil_threshold, local_solubility, ElsReport, LocalOutcome, LocalSolver,
    LocalWitness, Place, PlaceLog, Verdict,
};
pub use scan::{
    admissible_prime_scan, default_base_point, hasse_failure_candidates, AdmissibleTwist, CandidateSource,
    HasseCandidate, ScanReport,
};
pub use search::{find_point, search_points, search_points_naive};
