use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed angle: {0}")]
    MalformedAngle(String),
    #[error("degree must be at least 2, got {0}")]
    InvalidDegree(i64),
    #[error("degenerate arc: both endpoints are {0}")]
    DegenerateArc(String),
    #[error("arithmetic capacity exceeded: {0}")]
    Capacity(String),
    #[error("malformed angle set: {0}")]
    MalformedSet(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}
