use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{what} supports at most {limit}, got {got}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    /// An internal identity (divisibility, bound) failed to hold. Always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("oracle budget exhausted after {0} work units")]
    Budget(u64),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// Errors caused by the input being too large for an algorithm or oracle.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. } | Error::Budget(_))
    }
}

pub(crate) fn check_capacity(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, limit, got })
    } else {
        Ok(())
    }
}
