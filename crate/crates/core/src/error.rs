use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The α description itself is malformed (perfect-square radicand, zero denominator, ...).
    #[error("invalid alpha: {0}")]
    InvalidAlpha(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} index {index} out of range (available through {available})")]
    OutOfRange {
        what: &'static str,
        index: i64,
        available: i64,
    },

    /// A prefix-only continued fraction does not carry enough digits.
    #[error("insufficient continued-fraction digits: need depth {needed}, have {available}")]
    InsufficientDigits { needed: usize, available: usize },

    #[error("precision unresolved at {bits} bits")]
    PrecisionUnresolved { bits: u32 },

    #[error("unsupported input: {0}")]
    Unsupported(String),
}
