//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the toolkit.
///
/// Numerical diagnostics are carried as f64 regardless of the working scalar.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix contains non-finite entries")]
    NonFiniteEntries,

    #[error("matrix is not Hermitian: deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPsd { min_eig: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("map is not Hermiticity-preserving: Choi deviation {deviation:.3e}")]
    NotHermiticityPreserving { deviation: f64 },

    #[error("map is not completely positive: min Choi eigenvalue {min_eig:.3e}")]
    NotCompletelyPositive { min_eig: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("linear solve failed: matrix is singular to working precision")]
    SingularMatrix,

    #[error(
        "time-scale separation violated: t = {t:.3e} < {factor} x tau0 = {bound:.3e}"
    )]
    SeparationViolated { t: f64, factor: f64, bound: f64 },

    #[error("tabulated structure function does not cover q = {q:.3e} (table spans [{q_min:.3e}, {q_max:.3e}])")]
    TableRange { q: f64, q_min: f64, q_max: f64 },

    #[error("quadrature error estimate {estimate:.3e} exceeds tolerance {tolerance:.3e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("unphysical gain: imaginary optical potential must be <= 0, got {value:.3e}")]
    UnphysicalGain { value: f64 },

    #[error("truncation leak at t = {t:.3e}: top-level occupation {occupation:.3e} exceeds {threshold:.3e}")]
    TruncationLeak { t: f64, occupation: f64, threshold: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CoreError>;
