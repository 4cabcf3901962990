use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid base {0:?}: expected one of A, C, G, T")]
    InvalidBase(char),

    #[error("empty sequence")]
    EmptySequence,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("shift index {index} out of range for sequence of length {len}")]
    ShiftOutOfRange { index: usize, len: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid bit string: {0}")]
    InvalidBits(String),

    #[error("invalid energy parameters: {0}")]
    InvalidEnergy(String),

    #[error("invalid linear energy model: {0}")]
    InvalidModel(String),

    #[error("brute-force length {n} exceeds the oracle cap {cap}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a simplex generator: {0}")]
    NotSimplex(String),
}
