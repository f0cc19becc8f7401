use std::path::Path;

use serde::{Deserialize, Serialize};

use super::ControlError;
use crate::numerics::{eigenvalues, Matrix, Spectrum};

/// Linearized single-input plant `x' = A x + B u` with a washout on one state.
///
/// Indices are zero-based in memory and one-based in the JSON file format.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpacePlant {
    a: Matrix,
    b: Matrix,
    washout_time_constant: f64,
    input_row: usize,
    sensed_state: usize,
}

/// On-disk plant description.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlantFile {
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    washout_time_constant: f64,
    sensed_state: usize,
    input_row: usize,
}

const REFERENCE_A: [[f64; 4]; 4] = [
    [0.0, 377.0, 0.0, 0.0],
    [-0.0587, 0.0, -0.1303, 0.0],
    [-0.0899, 0.0, -0.1956, 0.1289],
    [95.605, 0.0, -816.0862, -20.0],
];

/// The 4x4 open-loop state matrix of the reference plant.
pub fn reference_plant_matrix() -> Matrix {
    Matrix::from_rows(&REFERENCE_A).expect("constant matrix is valid")
}

impl StateSpacePlant {
    pub fn new(
        a: Matrix,
        b: Matrix,
        washout_time_constant: f64,
        input_row: usize,
        sensed_state: usize,
    ) -> Result<Self, ControlError> {
        let invalid = |m: String| Err(ControlError::InvalidPlant(m));
        if !a.is_square() || a.rows() == 0 {
            return invalid(format!("state matrix must be square, got {}x{}", a.rows(), a.cols()));
        }
        let n = a.rows();
        if b.rows() != n || b.cols() != 1 {
            return invalid(format!("input matrix must be {n}x1, got {}x{}", b.rows(), b.cols()));
        }
        if !(washout_time_constant.is_finite() && washout_time_constant > 0.0) {
            return invalid(format!(
                "washout time constant must be positive, got {washout_time_constant}"
            ));
        }
        if input_row >= n {
            return invalid(format!("input row {} outside 1..={n}", input_row + 1));
        }
        if sensed_state >= n {
            return invalid(format!("sensed state {} outside 1..={n}", sensed_state + 1));
        }
        if b[(input_row, 0)] == 0.0 {
            return invalid(format!("input entry b[{}] is zero", input_row + 1));
        }
        if let Some(i) = (0..n).find(|&i| i != input_row && b[(i, 0)] != 0.0) {
            return invalid(format!(
                "input drives state {} but input_row is {}",
                i + 1,
                input_row + 1
            ));
        }
        Ok(Self {
            a,
            b,
            washout_time_constant,
            input_row,
            sensed_state,
        })
    }

    /// Reference plant: 4 states, input gain 1000 on state 4, washout of 3 s on state 2.
    pub fn reference() -> Self {
        let b = Matrix::new(4, 1, vec![0.0, 0.0, 0.0, 1000.0]).expect("valid");
        Self::new(reference_plant_matrix(), b, 3.0, 3, 1).expect("reference plant is valid")
    }

    pub fn from_json_str(s: &str) -> Result<Self, ControlError> {
        let file: PlantFile = serde_json::from_str(s)?;
        let a = Matrix::from_rows(&file.a)?;
        let n = file.b.len();
        let b = Matrix::new(n, 1, file.b)?;
        let to_zero_based = |name: &str, v: usize| {
            v.checked_sub(1).ok_or_else(|| {
                ControlError::InvalidPlant(format!("{name} is one-based; 0 is not a valid index"))
            })
        };
        Self::new(
            a,
            b,
            file.washout_time_constant,
            to_zero_based("input_row", file.input_row)?,
            to_zero_based("sensed_state", file.sensed_state)?,
        )
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self, ControlError> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        let file = PlantFile {
            a: self.a.to_rows(),
            b: self.b.data().to_vec(),
            washout_time_constant: self.washout_time_constant,
            sensed_state: self.sensed_state + 1,
            input_row: self.input_row + 1,
        };
        serde_json::to_string_pretty(&file).expect("plant serializes")
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    pub fn washout_time_constant(&self) -> f64 {
        self.washout_time_constant
    }

    pub fn input_row(&self) -> usize {
        self.input_row
    }

    pub fn sensed_state(&self) -> usize {
        self.sensed_state
    }

    pub fn order(&self) -> usize {
        self.a.rows()
    }

    pub fn open_loop_spectrum(&self) -> Result<Spectrum, ControlError> {
        Ok(eigenvalues(&self.a)?)
    }
}
