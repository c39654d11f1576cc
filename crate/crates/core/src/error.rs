use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty digit sequence")]
    EmptyWord,
    #[error("digit {0} is not a positive integer")]
    BadDigit(u64),
    #[error("word is not primitive: {0}")]
    NotPrimitive(String),
    #[error("argument {value} outside domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("surd/word pair is inconsistent: {0}")]
    InconsistentPair(String),
    #[error("matrix is not in PGL2(Z): |det| = {0}")]
    NotUnimodular(String),
    #[error("matrix is not in PSL2(Z): det = {0}")]
    NotPsl2(String),
    #[error("matrix is not hyperbolic: trace {0}")]
    NotHyperbolic(String),
    #[error("matrix does not fix the given surd")]
    DoesNotFix,
    #[error("identity matrix has no nonzero exponent in the fixing group")]
    IdentityInput,
    #[error("matrix is not a B-product power: {0}")]
    NotBProduct(String),
    #[error("census incomplete: requested t = {requested}, census covers t_max = {available}")]
    CensusIncomplete { requested: f64, available: f64 },
    #[error("resource guard: estimated {estimate:.3e} records exceeds cap {cap:.3e} (use force to override)")]
    ResourceGuard { estimate: f64, cap: f64 },
    #[error("census i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("census format version mismatch: {0}")]
    FormatVersion(String),
    #[error("census checksum failure: {0}")]
    Checksum(String),
    #[error("census parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("empty sample")]
    EmptySample,
    #[error("weights do not match points: {points} points, {weights} weights")]
    WeightMismatch { points: usize, weights: usize },
    #[error("nuclearity violation: Re(s) = {0} <= 1/2")]
    NuclearityViolation(f64),
    #[error("operator tail not converged: {0}")]
    TailNotConverged(String),
    #[error("no sign change of lambda - 1 in bracket [{0}, {1}]")]
    NoSignChange(f64, f64),
    #[error("eigenvalue tracking lost: {0}")]
    TrackingLost(String),
    #[error("pole proximity: |Z| = {0:.3e} below threshold")]
    PoleProximity(f64),
    #[error("finite-difference step unusable: {0}")]
    BadStep(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
