//! Dense real-matrix arithmetic and eigenvalues of real square matrices.

mod eigen;
mod matrix;

pub use eigen::{eigenvalues, Spectrum};
pub use matrix::{determinant, trace, Matrix};

/// Complex scalar used for eigenvalues.
pub type Complex = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NumericsError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix data length {len} does not match shape {rows}x{cols}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("eigenvalue iteration did not converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("matrix dimension {0} exceeds the supported maximum of 64")]
    TooLarge(usize),
}
