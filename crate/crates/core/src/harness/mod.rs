//! Seeded multi-run experiments over the lead-lag problem and reference-table checks.

mod config;
mod experiment;
mod report;
mod verify;

pub use config::{AlgorithmSet, ExperimentConfig};
pub use experiment::{execute, run_experiment, run_one, write_convergence_csv, CSV_HEADER};
pub use report::{AlgorithmSummary, ComparisonReport, ConvergenceSpeed};
pub use verify::{reference, verify_reference_tables, TableCheck, VerificationSummary};

use std::path::PathBuf;

use crate::control::ControlError;
use crate::optim::{Algorithm, OptimError};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("plant: {0}")]
    Plant(#[source] ControlError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{algorithm} run with seed {seed} failed: {source}")]
    Run {
        algorithm: Algorithm,
        seed: u64,
        #[source]
        source: OptimError,
    },
    #[error("numerical failure: {0}")]
    Numerical(#[source] ControlError),
}

impl HarnessError {
    /// Process exit code: 1 for configuration problems, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Plant(_) | HarnessError::Io { .. } => 1,
            HarnessError::Run { .. } | HarnessError::Numerical(_) => 2,
        }
    }
}

pub(crate) fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> HarnessError {
    let path = path.into();
    move |source| HarnessError::Io { path, source }
}
