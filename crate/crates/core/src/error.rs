use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("zero input to {0}")]
    ZeroInput(&'static str),
    #[error("not a prime: {0}")]
    NotPrime(String),
    #[error("incompatible residue test: p = {p} is not 1 mod q = {q}")]
    IncompatibleResidueTest { p: String, q: u64 },
    #[error("polynomial is not monic in Y")]
    NonMonic,
    #[error("not a minimal polynomial")]
    NotMinimalPolynomial,
    #[error("vanishing reduction mod {0}")]
    VanishingReduction(u64),
    #[error("degree cap exceeded: degree {degree} > {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("repeated roots")]
    RepeatedRoots,
    #[error("content is not squarefree")]
    ContentNotSquarefree,
    #[error("specialization at branch point")]
    BranchPoint,
    #[error("t0 is a branch point")]
    CubicBranchPoint,
    #[error("orbit not p-integral at p = {0}")]
    OrbitNotIntegral(String),
    #[error("not in P(n,N): a root has multiplicity >= {0}")]
    NotInPnN(u32),
    #[error("certificate requires n | N")]
    CertificateRequiresDivisibility,
    #[error("polynomial has a rational root")]
    RationalRoot,
    #[error("identity violated")]
    IdentityViolated,
    #[error("cover has a rational branch point")]
    RationalBranchPoint,
    #[error("branch-point condition fails")]
    BranchPointCondition,
    #[error("trivial group")]
    TrivialGroup,
    #[error("inconsistent ramification type")]
    InconsistentRamification,
    #[error("insufficient descriptor: {0}")]
    InsufficientDescriptor(&'static str),
    #[error("nonpositive ratio in series")]
    NonPositiveRatio,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("local verification disagrees for d = {0}")]
    LocalVerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
