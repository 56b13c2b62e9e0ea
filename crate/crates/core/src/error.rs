use thiserror::Error;

/// Errors raised by the library. Every variant is a domain precondition
/// failure except [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a partition of [{n}]: {reason}")]
    NotAPartition { n: usize, reason: String },

    #[error("partition of [{n}] is crossing")]
    Crossing { n: usize },

    #[error("mismatched sizes: {left} vs {right}")]
    MismatchedN { left: usize, right: usize },

    #[error("{what} = {value} is out of the supported range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("partition is not below the target partition")]
    NotBelow,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("factor {index} is not a boundary partition for strand {b}")]
    FactorNotBoundary { index: usize, b: usize },

    #[error("partition is not a boundary partition for the given set")]
    NotBoundary,

    #[error("wrapping profile violates the cyclic chain condition")]
    InvalidProfile,

    #[error("profile has {got} entries but the boundary set has {expected}")]
    IndexMismatch { expected: usize, got: usize },

    #[error("illegal step {index}: {reason}")]
    IllegalStep { index: usize, reason: String },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("point is not in the dilated column: {0}")]
    NotInColumn(String),

    #[error("resource bound exceeded after {vertices} vertices and {edges} edges")]
    ResourceBound { vertices: usize, edges: usize },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable identifier used by the command line frontend.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotAPartition { .. } => "not-a-partition",
            Error::Crossing { .. } => "crossing-partition",
            Error::MismatchedN { .. } => "mismatched-n",
            Error::OutOfRange { .. } => "out-of-range",
            Error::NotBelow => "not-below",
            Error::InvalidPermutation(_) => "invalid-permutation",
            Error::FactorNotBoundary { .. } => "factor-not-boundary",
            Error::NotBoundary => "not-boundary",
            Error::InvalidProfile => "invalid-profile",
            Error::IndexMismatch { .. } => "index-mismatch",
            Error::IllegalStep { .. } => "illegal-step",
            Error::InvalidComplex(_) => "invalid-complex",
            Error::NotInColumn(_) => "not-in-column",
            Error::ResourceBound { .. } => "resource-bound",
            Error::Internal(_) => "internal",
        }
    }

    /// Whether the error reflects bad input rather than a library fault.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_same_n(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::MismatchedN { left, right })
    }
}
