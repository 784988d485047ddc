use thiserror::Error;

/// Everything that can go wrong in the calculator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("prime mismatch: expected {expected}, found {found}")]
    PrimeMismatch { expected: u32, found: u32 },

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} = {value} exceeds the safety limit {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("non-torsion K-theory; χ undefined ({0} present)")]
    NonTorsion(String),

    #[error("differential does not square to zero")]
    NotADifferential,
}

impl CalcError {
    /// Stable machine-readable code, used by the CLI and the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            CalcError::InvalidPrime(_) => "invalid_prime",
            CalcError::PrimeMismatch { .. } => "prime_mismatch",
            CalcError::Schema(_) => "schema",
            CalcError::Precondition(_) => "precondition",
            CalcError::NotPrime(_) => "not_prime",
            CalcError::BoundExceeded { .. } => "bound_exceeded",
            CalcError::NonTorsion(_) => "non_torsion",
            CalcError::NotADifferential => "not_a_differential",
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        CalcError::Precondition(msg.into())
    }
}

pub type Result<T, E = CalcError> = std::result::Result<T, E>;
