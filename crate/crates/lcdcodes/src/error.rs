use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero code (k = 0) has no {0}")]
    ZeroCode(&'static str),
    #[error("enumeration cap exceeded: dimension {dim} > cap {cap}")]
    EnumerationCap { dim: usize, cap: usize },
    #[error("coordinate {coord} out of range for length {n}")]
    InvalidCoordinate { coord: usize, n: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vector length {got} does not match dimension {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("scale guard refused: {0} (pass the override to force)")]
    ScaleGuard(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bounds contradiction at ({n},{k}): lower {lower} > upper {upper}; provenance: {provenance}")]
    Contradiction {
        n: usize,
        k: usize,
        lower: usize,
        upper: usize,
        provenance: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
