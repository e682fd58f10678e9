//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different polynomial rings.
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    /// Input outside an operation's mathematical domain (zero polynomial,
    /// composite modulus, constant where degree >= 1 is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix shape violation (non-square, asymmetric where symmetry is required).
    #[error("shape error: {0}")]
    Shape(String),

    /// The ideal is not zero-dimensional.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// No random linear form separated the solutions within the retry budget.
    #[error("genericity failure: no separating linear form found after {retries} attempts")]
    Genericity { retries: usize },

    /// Text input rejected, with source location.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    /// An internal cross-check failed; indicates a bug, never bad input.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
