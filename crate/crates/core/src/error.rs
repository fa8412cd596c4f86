use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("evaluation hits a pole: coordinate {var} is zero but a negative exponent is present")]
    PoleAtZero { var: usize },

    #[error("cannot substitute z{var} -> z{var} + c: a negative exponent in z{var} would leave the ring")]
    ShiftNegativeExponent { var: usize },

    #[error("expected a polynomial, found negative exponents: {0}")]
    NotPolynomial(String),

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("parameter out of domain: {0}")]
    ParameterOutOfDomain(String),

    #[error("operators do not commute: {0}")]
    NonCommuting(String),

    #[error("not in the operator image: {0}")]
    NotInImage(String),

    #[error("witness failed re-verification: {0}")]
    WitnessVerification(String),

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
