use thiserror::Error;

/// Failure modes of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed document or parameters.
    #[error("schema error: {0}")]
    Schema(String),

    /// A presentation failed one of the graded axioms.
    #[error("axiom `{axiom}` violated at {at}: left side {lhs}, right side {rhs}")]
    Axiom {
        axiom: String,
        at: String,
        lhs: String,
        rhs: String,
    },

    /// Invalid argument to an operation.
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested ring cannot be used for this operation.
    #[error("unsupported ring: {0}")]
    Ring(String),

    /// A basis or matrix exceeded a configured size bound.
    #[error("resource bound exceeded: {0}")]
    Resource(String),

    /// An internal identity (for instance d² = 0) failed.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
