use thiserror::Error;

#[derive(Debug, Error)]
pub enum LonError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("problem too large for exhaustive enumeration: n = {n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LonError>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(LonError::InvalidArgument(msg.into()))
}

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> LonError {
    LonError::Parse {
        line,
        msg: msg.into(),
    }
}
