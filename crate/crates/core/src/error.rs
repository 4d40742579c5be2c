use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not invertibly T-acted: {0}")]
    NotInvertible(String),
    #[error("zero ring rejected")]
    ZeroRing,
    #[error("foreign element: {0}")]
    Foreign(String),
    #[error("infinite ring")]
    InfiniteRing,
    #[error("parse error in {what}: {msg}")]
    Parse { what: &'static str, msg: String },
    #[error("{0}")]
    Axiom(String),
    #[error("not a 2-cocycle: condition fails at {0:?}")]
    NotCocycle(Vec<usize>),
    #[error("not a complex: d_out * d_in is nonzero modulo relations")]
    NotComplex,
    #[error("resource guard: basis of size {size} exceeds limit {limit}")]
    ResourceGuard { size: usize, limit: usize },
    #[error("section arithmetic inconsistent: {0}")]
    Section(String),
    #[error("lift rejected: {0}")]
    Lift(String),
    #[error("diagram: {0}")]
    Diagram(String),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(what: &'static str, msg: impl Into<String>) -> Error {
    Error::Parse { what, msg: msg.into() }
}
