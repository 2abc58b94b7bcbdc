use thiserror::Error;

/// Malformed input: index ranges, shapes, lengths. Distinct from violations of
/// the algebraic axioms, which are reported as values rather than errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("{what}: index {index} out of range (size {len})")]
    IndexOutOfRange {
        what: String,
        index: usize,
        len: usize,
    },
    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("{what}: expected a {rows}x{cols} matrix, found {found_rows}x{found_cols}")]
    ShapeMismatch {
        what: String,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("duplicate structure constant for ({0}, {1}, {2})")]
    DuplicateConstant(usize, usize, usize),
    #[error("{0} must not be empty")]
    Empty(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Structural(#[from] StructuralError),
    #[error("the zero object cannot be used here")]
    ZeroObject,
    #[error("the zero matrix has no Perron-Frobenius data")]
    ZeroMatrix,
    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(String),
    #[error("power iteration did not reach width {tolerance} after {iterations} iterations")]
    NotConverged {
        tolerance: String,
        iterations: usize,
    },
    #[error("initial dimension vector is zero")]
    ZeroInitialVector,
    #[error("level {level} is beyond the materialized horizon {horizon}")]
    BeyondHorizon { level: usize, horizon: usize },
    #[error("action fails validation ({0} violations)")]
    InvalidAction(usize),
    #[error("ring fails validation ({0} violations)")]
    InvalidRing(usize),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("oracle bound exceeded: total target dimension {dimension} > {bound}")]
    BoundExceeded { dimension: usize, bound: usize },
    #[error("invalid inclusion: {0}")]
    InvalidInclusion(String),
    #[error("unknown strongly self-absorbing algebra {0:?}")]
    UnknownAlgebra(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
