use thiserror::Error;

/// Errors returned by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} out of range for {len} beams")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("observation carries no signal power")]
    NoSignal,

    #[error("ratio table is not strictly monotone at sample {0}")]
    NonMonotone(usize),

    #[error("beam range {start}..={end} leaves the index space 0..{n_beams} (nearest valid range {suggested_start}..={suggested_end})")]
    RangeExceeded {
        start: i64,
        end: i64,
        n_beams: usize,
        suggested_start: usize,
        suggested_end: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
