use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands live in different variable contexts or have mismatched lengths.
    #[error("context mismatch: {0}")]
    Context(String),

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    /// A Gröbner computation hit its pair or wall-clock cap.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Evaluation outside the domain of a model (zero denominators, non-positive states).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integration failed: {0}")]
    Integration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
