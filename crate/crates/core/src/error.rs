use thiserror::Error;

use crate::exact::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two series whose exponent grids differ by a non-integer were combined.
    #[error("offset grid mismatch: {0} and {1} do not differ by an integer")]
    OffsetGrid(Box<Rational>, Box<Rational>),

    /// A coefficient below the tracked truncation was requested.
    #[error("truncation: exponent {requested} is below the valid floor {floor}")]
    Truncation { requested: Box<Rational>, floor: Box<Rational> },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// The order-by-order linear system did not pin every requested unknown.
    #[error("insufficient buffer: {buffer} extra orders do not determine the first {order} coefficients")]
    InsufficientBuffer { order: usize, buffer: usize },

    #[error("inconsistent linear system")]
    Inconsistent,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_truncation(&self) -> bool {
        matches!(self, Error::Truncation { .. })
    }
}
