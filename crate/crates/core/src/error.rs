use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the library. Variants carry enough context to be
/// printed directly by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("rational function has a pole at {0}")]
    PoleAtPoint(String),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("block dimension {part} outside [0, {max}]")]
    PartOutOfRange { part: i64, max: i64 },
    #[error("d_plus entry {part} outside [1, {max}]")]
    InvalidPlusPart { part: i64, max: i64 },
    #[error("the block vector must contain at least one entry")]
    EmptyParts,
    #[error("invalid order {0}: must be at least 1")]
    InvalidOrder(i64),
    #[error("every Farey fraction lies in the top bucket (max part 1); use the trivial-case path")]
    TrivialCase,
    #[error("argument {0} outside the domain (0, 1]")]
    OutOfDomain(String),
    #[error("gamma = D - p = {0} is negative")]
    GammaNegative(i64),
    #[error("bucket {0} is empty")]
    EmptyBucket(i64),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("quotient is not klt (D = {bold_d} <= p - 1 = {})", p - 1)]
    NotKlt { bold_d: i64, p: i64 },
    #[error("|I*| = {size} exceeds the subset enumeration cap {cap}")]
    SubsetCapExceeded { size: usize, cap: usize },
    #[error("anchor is not an element of the subset")]
    AnchorNotInSubset,
    #[error("subset must be non-empty")]
    EmptySubset,
    #[error("index ({0}, {1}) is not in I*")]
    InvalidIndex(usize, i64),
    #[error("boundary coefficient {0} is not < 1")]
    InvalidCoeff(String),
    #[error("exponent {0} is not an integer")]
    NonIntegerExponent(String),
    #[error("gcd must be at least 2 for a singular stratum")]
    TrivialGcd,
    #[error("D = {0} is below the standing assumption D >= 2")]
    BelowStandingAssumption(i64),
    #[error("invalid batch configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
