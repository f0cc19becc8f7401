//! Plant model, lead-lag closed loop and the minimum-damping objective.

mod closed_loop;
mod damping;
mod plant;

pub use closed_loop::{assemble_closed_loop, closed_loop_spectrum};
pub use damping::{damping_ratio, min_damping_ratio};
pub use plant::{reference_plant_matrix, StateSpacePlant};

use serde::{Deserialize, Serialize};

use crate::numerics::{eigenvalues, NumericsError};
use crate::space::SearchSpace;

#[derive(Debug, thiserror::Error)]
pub enum ControlError {
    #[error("invalid controller parameters: {0}")]
    InvalidParams(String),
    #[error("damping ratio is undefined for a zero eigenvalue")]
    ZeroEigenvalue,
    #[error("spectrum is empty")]
    EmptySpectrum,
    #[error("invalid plant: {0}")]
    InvalidPlant(String),
    #[error("parameters {params:?} lie outside the search space")]
    OutOfBounds { params: Vec<f64> },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error("reading plant file: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing plant JSON: {0}")]
    Json(#[from] serde_json::Error),
}

/// Lead-lag compensator `kc (1 + s t1) / (1 + s t2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LeadLagParams {
    pub kc: f64,
    pub t1: f64,
    pub t2: f64,
}

impl LeadLagParams {
    pub const fn new(kc: f64, t1: f64, t2: f64) -> Self {
        Self { kc, t1, t2 }
    }

    /// Reads `[kc, t1, t2]`.
    pub fn from_slice(x: &[f64]) -> Result<Self, ControlError> {
        match *x {
            [kc, t1, t2] => Ok(Self { kc, t1, t2 }),
            _ => Err(ControlError::InvalidParams(format!(
                "expected 3 values (kc, t1, t2), got {}",
                x.len()
            ))),
        }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.kc, self.t1, self.t2]
    }
}

/// Minimum closed-loop damping ratio for `params`. Larger is better.
pub fn objective(plant: &StateSpacePlant, params: LeadLagParams) -> Result<f64, ControlError> {
    let a = assemble_closed_loop(plant, params)?;
    min_damping_ratio(&eigenvalues(&a)?)
}

/// The lead-lag tuning problem as a bounded black-box function of `[kc, t1, t2]`.
#[derive(Debug, Clone)]
pub struct LeadLagProblem {
    plant: StateSpacePlant,
    space: SearchSpace,
}

impl LeadLagProblem {
    pub fn new(plant: StateSpacePlant, space: SearchSpace) -> Result<Self, ControlError> {
        if space.dimension() != 3 {
            return Err(ControlError::InvalidParams(format!(
                "lead-lag search space needs 3 dimensions, got {}",
                space.dimension()
            )));
        }
        if space.lower()[2] <= 0.0 {
            return Err(ControlError::InvalidParams(
                "lag time constant bound must be positive".into(),
            ));
        }
        Ok(Self { plant, space })
    }

    pub fn plant(&self) -> &StateSpacePlant {
        &self.plant
    }

    pub fn space(&self) -> &SearchSpace {
        &self.space
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, ControlError> {
        if !self.space.contains(x) {
            return Err(ControlError::OutOfBounds { params: x.to_vec() });
        }
        objective(&self.plant, LeadLagParams::from_slice(x)?)
    }
}
