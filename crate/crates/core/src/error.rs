use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("contraction violated: Lambda = {0} >= 1")]
    ContractionViolated(f64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("input too short: need {needed} values, have {available}")]
    InputTooShort { needed: usize, available: usize },

    #[error("insufficient moments: {0}")]
    InsufficientMoments(String),

    #[error("decay hypothesis fails: {0}")]
    HypothesisFailure(String),

    #[error("degenerate: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
