use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// An operation would produce an element above the global truncation degree.
    #[error("degree {degree} exceeds the degree bound {bound}")]
    DegreeOverflow { degree: u32, bound: u32 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("the zero polynomial has no leading monomial")]
    ZeroPolynomial,

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// A syntax error in one of the text formats, with a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
