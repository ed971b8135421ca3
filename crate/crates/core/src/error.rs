use crate::exactalg::FieldSpec;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} versus {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("arrows do not compose: {0}")]
    NotComposable(String),
    #[error("not a cycle: {0}")]
    NotACycle(String),
    #[error("cannot strip an arrow from a path of length 0")]
    EmptyPath,
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("condition PBW2' does not hold: {0}")]
    Pbw2PrimeViolated(String),
    #[error("characteristic {characteristic} divides N! for N = {n}")]
    CharacteristicDividesFactorial { characteristic: u64, n: usize },
    #[error("lambda coefficients are inconsistent: {0}")]
    LambdaInconsistent(String),
    #[error("internal round-trip failure: {0}")]
    RoundTrip(String),
    #[error("theta is not injective: {0}")]
    ThetaNotInjective(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable identifier of the variant, used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not-prime",
            Error::FieldMismatch(..) => "field-mismatch",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::InvalidQuiver(_) => "invalid-quiver",
            Error::UnknownArrow(_) => "unknown-arrow",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::NotComposable(_) => "not-composable",
            Error::NotACycle(_) => "not-a-cycle",
            Error::EmptyPath => "empty-path",
            Error::Inhomogeneous(_) => "inhomogeneous",
            Error::Degree(_) => "degree",
            Error::Precondition(_) => "precondition",
            Error::Pbw2PrimeViolated(_) => "pbw2prime-violated",
            Error::CharacteristicDividesFactorial { .. } => "characteristic-divides-factorial",
            Error::LambdaInconsistent(_) => "lambda-inconsistent",
            Error::RoundTrip(_) => "round-trip",
            Error::ThetaNotInjective(_) => "theta-not-injective",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
        }
    }
}
