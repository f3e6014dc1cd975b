use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace must be 1, got {trace}")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("state is not PPT (min eigenvalue of state {state_min:e}, of partial transpose {transpose_min:e})")]
    NotPpt { state_min: f64, transpose_min: f64 },

    #[error("weights must be positive and sum to 1 (sum = {sum})")]
    InvalidWeights { sum: f64 },

    #[error("product vector factor has zero norm")]
    ZeroFactor,

    #[error("parameters out of domain: need a > 0 and 0 < b < 4a^3/27 = {bound} (a = {a}, b = {b})")]
    ParameterDomain { a: f64, b: f64, bound: f64 },

    #[error("cubic roots are not separated (gap {gap:e})")]
    RootsNotSeparated { gap: f64 },

    #[error("non-finite solution set expected: only {constraints} constraints for {unknowns} unknowns in y")]
    NonFiniteSolutionSet { constraints: usize, unknowns: usize },

    #[error("invalid search options: {0}")]
    InvalidOptions(String),

    #[error("path direction is degenerate: rho1 equals rho0")]
    DegenerateDirection,

    #[error("rho1 lies on a proper sub-face ({which} range has dimension {dim}, face needs {expected}); rho_t is never PPT for t > 1")]
    ProperSubface {
        which: &'static str,
        dim: usize,
        expected: usize,
    },

    #[error("rho0 is not an interior point of the face: {0}")]
    NotInterior(String),

    #[error("failed to bracket the PPT boundary up to t = {t_max}")]
    BracketFailed { t_max: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
