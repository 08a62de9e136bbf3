use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes or tensor-factor metadata do not fit the requested operation.
    #[error("structural error: {0}")]
    Structural(String),

    /// An argument lies outside the mathematically meaningful range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The input is well-formed but describes an empty or zero-dimensional object.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// The computation would exceed the configured resource guard.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// The LP solver did not reach an optimum.
    #[error("solver failure: {0}")]
    Solver(String),

    /// An exact identity that must hold did not.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $variant:ident, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::$variant(format!($($fmt)+)));
        }
    };
}
pub(crate) use ensure;
