use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid generator: {0}")]
    InvalidGenerator(String),

    #[error("parenthesizations of M X M† disagree by {residual:e} (tolerance {tol:e})")]
    AssociationMismatch { residual: f64, tol: f64 },

    #[error("expected rank {expected}, found {found}")]
    Rank { expected: usize, found: usize },

    #[error("dependency identity failed: {0}")]
    Dependency(String),

    #[error("bracket [{0}, {1}] does not lie in the span of the basis")]
    NonClosure(String, String),

    #[error("matrix is singular")]
    Singular,

    #[error("unknown basis element {0:?}")]
    UnknownName(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
