//! Shared error type and the exit-code contract of the `rp` binary.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode surfaced by the library or the `rp` binary.
///
/// The three variants map onto the process exit codes of `rp`:
/// parse errors exit with 2, violated mathematical preconditions with 3,
/// and results that cannot be certified at the working truncation order
/// with 4 (success is 0; `rp verify` exits 1 when an identity check fails,
/// which is an ordinary outcome rather than an `Error`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input text does not conform to the polynomial grammar.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A mathematical precondition of an operation is violated.
    /// `stage` names the operation that rejected the input.
    #[error("{stage}: {message}")]
    Domain { stage: &'static str, message: String },

    /// The requested quantity is well-defined but cannot be pinned down
    /// from the available truncated data.
    #[error("{stage}: uncertified at truncation order {order}: {message}")]
    Uncertified {
        stage: &'static str,
        order: usize,
        message: String,
    },
}

impl Error {
    pub fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub fn domain(stage: &'static str, message: impl Into<String>) -> Self {
        Error::Domain {
            stage,
            message: message.into(),
        }
    }

    pub fn uncertified(stage: &'static str, order: usize, message: impl Into<String>) -> Self {
        Error::Uncertified {
            stage,
            order,
            message: message.into(),
        }
    }

    /// Exit code used by the `rp` binary: 2 parse, 3 domain, 4 uncertified.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Domain { .. } => 3,
            Error::Uncertified { .. } => 4,
        }
    }
}
