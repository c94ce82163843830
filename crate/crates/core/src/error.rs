use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Incompatible operands (mismatched variables, caps, dimensions).
    #[error("usage error: {0}")]
    Usage(String),

    /// A cost guard refused the request.
    #[error("refused: {0}")]
    Guard(String),

    /// A result that must be an integer was not one.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// Multiprecision estimates disagree beyond tolerance.
    #[error("precision error: {0}")]
    Precision(String),

    /// Quadrature refinement disagrees beyond tolerance.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Malformed input data (triangles, records, tables).
    #[error("validation error: {0}")]
    Validation(String),
}
