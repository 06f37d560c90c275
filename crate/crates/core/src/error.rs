use thiserror::Error;

use crate::ring::ElementId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("ring has {size} elements, above the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: u64,
        cap: u64,
    },

    #[error("element {0} is out of range for a ring of size {1}")]
    ElementOutOfRange(u64, usize),

    #[error("s = {0} is not central")]
    NotCentral(ElementId),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("matrix is not idempotent")]
    NotIdempotent,

    #[error("unknown check id {0:?}")]
    UnknownCheck(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("exhaustive search found no {0}")]
    SearchExhausted(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),
}

impl Error {
    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    /// True for errors caused by a violated mathematical precondition, as
    /// opposed to malformed input or exceeded resource caps.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::NotCentral(_) | Error::Hypothesis(_) | Error::NotIdempotent
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
