use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its domain (mismatched ranks, bad
    /// interval endpoints, malformed index sequences, ...).
    #[error("usage error: {0}")]
    Usage(String),

    #[error("element {element} is not a member of {set}")]
    ElementNotFound { element: usize, set: String },

    #[error("arithmetic overflow in tropical product")]
    Overflow,

    /// Tableau parameters fail the column-compatibility inequality for row
    /// `x` and offset `t`.
    #[error("invalid tableau parameters: inequality fails at x = {x}, t = {t}")]
    InvalidParameters { x: usize, t: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("matrix is not in the image of the representation: {0}")]
    NotInImage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A property guaranteed by the theory failed; always an implementation bug.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("witness constants too small: {0}")]
    ConstantsTooSmall(String),

    #[error("rank {n} exceeds capacity (maximum {max})")]
    Capacity { n: usize, max: usize },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}
