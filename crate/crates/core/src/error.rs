use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: entry ({row}, {col}) deviates by {asymmetry:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        asymmetry: f64,
    },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("eigen solver failed to converge for a {dim}x{dim} matrix")]
    ConvergenceFailure { dim: usize },

    #[error("matrix has zero rows or columns")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("trace is {trace} (expected 1)")]
    InvalidTrace { trace: f64 },

    #[error("matrix is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("expectation value has imaginary part {0:e}")]
    NonRealExpectation(f64),

    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid scheme: {0}")]
    InvalidScheme(String),

    #[error("scheme has no finite atomic representation: {0}")]
    NoAtomicForm(String),

    #[error("reconstruction map has rank {rank}, need {required}; states are not distinguishable")]
    RankDeficient { rank: usize, required: usize },

    #[error("distribution has weight {weight:e} at {point:?}, outside the map support")]
    SupportMismatch { point: Vec<f64>, weight: f64 },

    #[error("realness diagnostics disagree: atoms Hermitian = {atoms_hermitian}, hashed operator symmetric = {hashed_symmetric}")]
    InconsistentRealness {
        atoms_hermitian: bool,
        hashed_symmetric: bool,
    },

    #[error("search exhausted after {0} attempts")]
    SearchExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
