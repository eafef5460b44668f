//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (residual {residual:.3e} exceeds tolerance {tol:.3e})")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("matrix is not unitary (residual {residual:.3e} exceeds tolerance {tol:.3e})")]
    NotUnitary { residual: f64, tol: f64 },

    #[error("matrix is not {expected} (residual {residual:.3e} exceeds tolerance {tol:.3e})")]
    NotNormal {
        expected: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("eigensolver failed to converge within {max_sweeps} sweeps (off-diagonal norm {off:.3e})")]
    ConvergenceFailure { max_sweeps: usize, off: f64 },

    #[error("dimension {dim} is not a power of 2")]
    BadDimension { dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("time parameter must be nonzero")]
    ZeroTime,

    #[error("search space too large: {size} branches exceeds the guard of {guard}")]
    SearchSpaceTooLarge { size: u128, guard: u128 },

    #[error("matrix text format error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
