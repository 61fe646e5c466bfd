use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial of degree {degree} exceeds ambient degree {n}")]
    DegreeExceedsAmbient { degree: usize, n: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),
    #[error("empty interval: lo must be < hi")]
    InvalidInterval,
    #[error("polynomial is not real-rooted")]
    NotRealRooted,
    #[error("polynomial has degree zero")]
    DegreeZero,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("omega must be positive")]
    NonpositiveOmega,
    #[error("leading coefficient must be positive")]
    NonpositiveLeading,
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("pinch would cross or reorder coordinates")]
    CrossingPinch,
    #[error("unsupported size n = {0} (max 6)")]
    UnsupportedSize(usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("polynomial degree {degree} is below the ambient degree {n}")]
    DegreeDeficient { degree: usize, n: usize },
    #[error("precondition not certified: {0}")]
    PreconditionNotCertified(String),
    #[error("degree condition (n-deg p)+(n-deg q)+(n-deg r) < n violated")]
    DegreeConditionViolated,
    #[error("polynomial has a single distinct root")]
    SingleDistinctRoot,
    #[error("mu outside [mu0, mu1]")]
    MuOutOfRange,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("root needed exactly but is irrational: {0}")]
    IrrationalRoot(String),
    #[error("degree bounds differ")]
    GammaMismatch,
    #[error("polynomial is not multiaffine")]
    NotMultiaffine,
    #[error("real stability could not be certified")]
    StabilityNotCertified,
    #[error("polynomial vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown statement `{0}`")]
    UnknownStatement(String),
    #[error("missing input `{0}`")]
    MissingInput(String),
}
