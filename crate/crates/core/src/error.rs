use thiserror::Error;

/// Errors raised by the array, series and matrix routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A quotient or substitution would leave the ring of power series.
    #[error("order error: {0}")]
    Order(String),

    #[error("division by a series that vanishes through degree {trunc}")]
    ZeroDivisor { trunc: usize },

    #[error("parity error: {0}")]
    Parity(String),

    /// A result needs more certified coefficients than the inputs carry.
    #[error("truncation error: degree {needed} requested but only certified through {available}")]
    Trunc { needed: usize, available: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("syntax error at byte {offset}: expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
    },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("label {label} escapes the label window of size {window}")]
    WindowOverflow { label: usize, window: usize },

    #[error("label {0} has no production")]
    UndefinedLabel(usize),

    #[error("base array is not totally positive: {0}")]
    NonTpBase(String),

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("malformed input: {0}")]
    Format(String),

    /// An identity that must hold on the computed data did not.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
