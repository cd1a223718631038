use thiserror::Error;

use crate::rootsystem::Family;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The Pieri recursion was asked for a rank where its hypotheses fail.
    #[error("{family} is outside the stable range; minimal admissible rank is {minimal_rank}")]
    OutOfStableRange { family: Family, minimal_rank: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
