use thiserror::Error;

/// Errors raised while reading a window such as `3,1^1,2^2`.
///
/// Positions are one-indexed token positions in the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty window")]
    Empty,
    #[error("malformed token {token:?} at position {position}")]
    Malformed { position: usize, token: String },
    #[error("value {value} at position {position} is outside 1..={n}")]
    ValueOutOfRange { position: usize, value: usize, n: usize },
    #[error("color {color} at position {position} is outside 0..={max}", max = .r - 1)]
    ColorOutOfRange { position: usize, color: usize, r: usize },
    #[error("value {value} at position {position} already appears earlier in the window")]
    DuplicateValue { position: usize, value: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameters r={r}, n={n}: both must be at least 1")]
    InvalidParams { r: usize, n: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("parameter mismatch: G({0}, {1}) vs G({2}, {3})")]
    ParamMismatch(usize, usize, usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("letter {value}^{color} is not in the alphabet of G({r}, {n})")]
    LetterOutOfRange { value: usize, color: usize, r: usize, n: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
