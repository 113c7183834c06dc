use thiserror::Error;

/// Errors raised by the engine.
///
/// Negative mathematical outcomes (a polynomial that is not central, a
/// grading that is not regular) are reported as data, never through this
/// type. An `Error` means the request itself was malformed or an internal
/// cross-check disagreed.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid group element: {0}")]
    InvalidElement(String),
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("element not in image of homomorphism: {0}")]
    NotInImage(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing value for variable {0}")]
    MissingVariable(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("cocycle condition fails at {0}")]
    NotCocycle(String),
    #[error("inadmissible substitution: {0}")]
    Inadmissible(String),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("invalid polynomial: {0}")]
    InvalidPoly(String),
    #[error("search too large: {0}")]
    GuardExceeded(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("not diagonalizable over the available field: {0}")]
    NotDiagonalizable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
