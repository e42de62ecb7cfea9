use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid function spec: {0}")]
    InvalidFunction(String),
    #[error("associate space not in table for {0}")]
    NotInTable(String),
    #[error("unsupported expression: {0}")]
    Unsupported(String),
    #[error("point {0} is a breakpoint; value only defined as a limit")]
    AtBreakpoint(f64),
    #[error("rearrangement is infinite (function does not decay)")]
    InfiniteRearrangement,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
