use thiserror::Error;

/// Errors raised while building or analysing sampled functions.
#[derive(Debug, Error)]
pub enum WhtError {
    #[error("sample {index} = {value} lies outside [-1, 1)")]
    SampleRange { index: usize, value: f64 },
    #[error("value {value} at index {index} does not fit in {d} signed bits")]
    ValueRange { index: usize, value: i64, d: u32 },
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("eta + d = {0} exceeds the 62-bit exact-arithmetic limit")]
    Width(u32),
    #[error("bit width must be positive")]
    ZeroWidth,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, WhtError>;
