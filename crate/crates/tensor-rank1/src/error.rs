//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by tensor construction, relaxation building, file parsing
/// and the SDP solver.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Shape or dimension mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// An index is out of range, unsorted where sortedness is required, or
    /// otherwise malformed.
    #[error("bad index: {0}")]
    Index(String),

    /// Requested generator family does not exist.
    #[error("unknown tensor family `{0}`")]
    UnknownFamily(String),

    /// A fixed-size generator family was called with incompatible (n, m).
    #[error("invalid dimensions for family `{family}`: {reason}")]
    FamilySize { family: String, reason: String },

    /// An operation required an even (or odd) tensor order.
    #[error("order parity: {0}")]
    Parity(String),

    /// Text-format parse failure, with the 1-based line number.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The interior-point solver could not make progress.
    #[error("sdp solver numerical failure: {0}")]
    SolverFailure(String),

    /// A bound or extraction was requested from a non-optimal solution.
    #[error("solution not optimal: {0}")]
    NotOptimal(String),

    /// Underlying linear algebra kernel failed to converge.
    #[error("linear algebra failure: {0}")]
    Linalg(String),

    /// I/O failure while reading or writing files.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
