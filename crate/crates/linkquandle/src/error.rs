//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by parsing, validation, and the search routines.
#[derive(Debug, Error)]
pub enum Error {
    /// The input text violates the Gauss-code grammar. `pos` is the byte
    /// offset into the parsed line.
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    /// The input parses but does not describe a diagram (bad label
    /// multiplicity, role pair, or sign pair).
    #[error("invalid diagram: {0}")]
    Validation(String),

    /// A component index or insertion position does not exist.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// The requested computation exceeds the configured caps.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// A quandle table file is malformed or fails the quandle axioms.
    #[error("invalid quandle table: {0}")]
    BadTable(String),

    /// The target quandle is not translation-commutative, so the
    /// requested algorithm does not apply.
    #[error("quandle is not translation-commutative")]
    NotTranslationCommutative,

    /// A decision procedure that assumes symmetric linking matrices was
    /// given an asymmetric one. The message names the offending entry.
    #[error("linking matrix is not symmetric: {0}")]
    NotSymmetric(String),

    /// A finite table was requested but some orbit is infinite.
    #[error("orbit {orbit} has infinite index")]
    InfiniteOrbit { orbit: usize },

    /// An operation precondition does not hold.
    #[error("{0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
