use thiserror::Error;

/// Errors raised by the exact-arithmetic and search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operation undefined for the zero polynomial: {0}")]
    ZeroPolynomial(&'static str),

    #[error("elements belong to different number fields")]
    MixedFields,

    #[error("element is zero: {0}")]
    ZeroElement(&'static str),

    #[error("root not isolated: {0}")]
    RootNotIsolated(String),

    #[error("root lies on the boundary of the rectangle")]
    RootOnBoundary,

    #[error("defining polynomial is not squarefree")]
    NotSquarefree,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A decomposition or identity that a proven statement rules out was
    /// observed. Indicates a bug in the arithmetic, never bad input.
    #[error("theory violation: {0}")]
    TheoryViolation(String),

    /// An internal self-check failed.
    #[error("soundness check failed: {0}")]
    Soundness(String),
}

impl Error {
    /// True for failures that indicate an internal bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::TheoryViolation(_) | Error::Soundness(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
