use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the metric, symbol, analysis and oracle routines.
///
/// Coordinate and index numbers carried in messages are 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("map coordinate {coordinate} escaped the unit disc (|value| = {modulus})")]
    EvaluationEscape { coordinate: usize, modulus: f64 },

    #[error("invalid self-map: coordinate {coordinate} reaches |value| = {modulus} > 1 at torus angles {angles:?}")]
    InvalidSelfMap { coordinate: usize, modulus: f64, angles: Vec<f64> },

    #[error("malformed symbol: {0}")]
    Structure(String),

    #[error("schema error: {0}")]
    Schema(String),
}
