//! Error type shared by all modules.

use thiserror::Error;

/// Failures reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("deformation parameter q={0} must lie strictly inside (0,1)")]
    InvalidQ(f64),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("label belongs to algebra {found:?}, expected {expected:?}")]
    WrongAlgebra {
        expected: crate::opalg::AlgebraTag,
        found: crate::opalg::AlgebraTag,
    },
    #[error("generator `{0}` is not bound")]
    UnboundGenerator(String),
    #[error("interior margin {margin} is smaller than the word radius {radius}")]
    MarginTooSmall { margin: i32, radius: i32 },
    #[error("cannot parse `{0}`")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
