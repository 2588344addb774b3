use thiserror::Error;

/// Errors raised by the numerical engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TfdError {
    #[error("invalid cutoff {0}: at least 2 Fock levels are required")]
    InvalidCutoff(usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("cutoff {dim} too small: tail mass {tail_mass:e} exceeds tolerance {tolerance:e}")]
    CutoffTooSmall {
        dim: usize,
        tail_mass: f64,
        tolerance: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operator is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("index {index} outside the admissible range 1..={max}")]
    OutOfRange { index: usize, max: usize },

    #[error("degenerate distribution: delta function at {re}+{im}i")]
    Degenerate { re: f64, im: f64 },

    #[error("quadrature did not converge: successive refinements differ by {difference:e} (tolerance {tolerance:e})")]
    QuadratureNotConverged { difference: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, TfdError>;
