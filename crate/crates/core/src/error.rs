use thiserror::Error;

use crate::lie::JacobiViolation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Jacobi identity fails on {} basis triple(s)", .0.len())]
    JacobiViolation(Vec<JacobiViolation>),

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("algebra is not filiform")]
    NotFiliform,

    #[error("cochain is not a 2-cocycle")]
    NotACocycle,

    #[error("basis change matrix is singular")]
    SingularBasis,

    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
