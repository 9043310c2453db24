//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by operations on value groups, fields, sequences and
/// extension valuations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A value does not conform to the group descriptor it is used with
    /// (wrong rank, wrong scalar kind, mismatched radicand).
    #[error("structural error: {0}")]
    Structural(String),

    /// A documented precondition was violated; the message names the
    /// mathematical constraint that failed.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Division by zero in exact field arithmetic.
    #[error("division by zero")]
    DivisionByZero,

    /// A rational function was evaluated at one of its poles.
    #[error("pole at the evaluation point")]
    Pole,

    /// The value of phi at a window index is not finite (a pole or zero of
    /// phi meets the sequence there); the caller should shift the window.
    #[error("phi has a zero or pole at sequence index {0}; shift the window")]
    NonfiniteValueAt(u64),

    /// An operation that needs a certified pseudo-limit was called on a
    /// sequence without one.
    #[error("sequence carries no certified pseudo-limit; only window-based analysis is available")]
    Uncertified,

    /// The fitted values along a window contradict the sequence's
    /// certified structure.
    #[error("inconsistent value fit: {0}")]
    Inconsistency(String),

    /// No candidate polynomial has positive dominating degree. This is not
    /// a proof that no such polynomial exists.
    #[error("no candidate has a root among the pseudo-limits of the sequence")]
    NoCandidateFound,

    /// Text failed to parse; `pos` is a zero-based byte offset.
    #[error("syntax error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
