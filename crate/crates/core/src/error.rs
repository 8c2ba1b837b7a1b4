use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {what} = {requested} exceeds the bound {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },
    #[error("polynomial degree {degree} exceeds the cap {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("series is not expandable at t = 0 (denominator vanishes there)")]
    NotExpandable,
    #[error("division by the zero series")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
