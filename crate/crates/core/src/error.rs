use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian: deviation {residual:e} exceeds tolerance {tolerance:e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("eigenvalue clustering is ambiguous: within-cluster spread {spread:e} exceeds gap {gap:e}")]
    ClusterAmbiguity { spread: f64, gap: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("matrix is not traceless: |trace| {trace:e} exceeds tolerance {tolerance:e}")]
    NotTraceless { trace: f64, tolerance: f64 },

    #[error("projection incompatible with the matrix: {0}")]
    ProjectionIncompatible(String),

    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),

    #[error("shift {shift:e} too small: minimum eigenvalue is {min_eigenvalue:e}")]
    ShiftTooSmall { shift: f64, min_eigenvalue: f64 },

    #[error("quasitrace axiom ({axiom}) violated with residual {residual:e}")]
    AxiomViolation { axiom: u8, residual: f64 },

    #[error("approximation does not belong to this element: {0}")]
    MismatchedProvenance(String),

    #[error("tail not Cauchy: oscillation {oscillation:e} exceeds tolerance {tolerance:e}")]
    NotCauchy { oscillation: f64, tolerance: f64 },

    #[error("invalid tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid spectral element: {0}")]
    InvalidElement(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid projection: {0}")]
    InvalidProjection(String),

    #[error("invalid unitary: deviation from U*U = I is {0:e}")]
    InvalidUnitary(f64),

    #[error("eigendecomposition failed to reconstruct: residual {residual:e} exceeds {tolerance:e}")]
    ReconstructionFailed { residual: f64, tolerance: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
