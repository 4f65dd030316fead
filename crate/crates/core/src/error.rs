use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("target QBER {target} unreachable: achievable range is ({floor}, 0.5)")]
    TargetUnreachable { target: f64, floor: f64 },

    #[error("degenerate channel: {0}")]
    DegenerateChannel(String),

    #[error("LDPC construction failed after {attempts} attempts for L={info_len}, r={parity_len}")]
    ConstructionFailed {
        info_len: usize,
        parity_len: usize,
        attempts: usize,
    },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("malformed alist: {0}")]
    Alist(String),

    #[error("grid point {index}: {source}")]
    AtGridPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
