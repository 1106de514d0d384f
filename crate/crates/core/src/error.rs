use klr_poly::PolyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("malformed quiver document at line {line}, column {column}: {msg}")]
    Syntax {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{location}: {msg}")]
    Invalid { location: String, msg: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("height {height} exceeds the configured cap {cap}")]
    HeightCap { height: usize, cap: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("color sequence is not a rearrangement of the root vector")]
    NotInClass,
    #[error("inadmissible Steinberg cell: {0}")]
    Inadmissible(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("evaluation points degenerate after {0} resamples")]
    Degenerate(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
