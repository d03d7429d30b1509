use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    ParseAt {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error("not a submodule: the subspace is not invariant")]
    NotInvariant,
    #[error("idempotent lifting did not converge (arithmetic bug)")]
    LiftingFailed,
    #[error("invalid perversity data: {0}")]
    Perversity(String),
    #[error("case data failure in {case}: {message}")]
    Case { case: String, message: String },
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
