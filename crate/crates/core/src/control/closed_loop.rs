use super::{ControlError, LeadLagParams, StateSpacePlant};
use crate::numerics::{eigenvalues, Matrix, Spectrum};

/// Augmented closed-loop matrix over `z = [x, washout, u]`.
///
/// The washout state follows `w' = x_s' - w / tw`, with `x_s' = A[s,:] x + b_s u`
/// for the sensed state `s`. The controller output obeys
/// `u' = (kc t1 / t2) w' + (kc / t2) w - u / t2`.
pub fn assemble_closed_loop(
    plant: &StateSpacePlant,
    params: LeadLagParams,
) -> Result<Matrix, ControlError> {
    let LeadLagParams { kc, t1, t2 } = params;
    if !(t2 > 0.0) {
        return Err(ControlError::InvalidParams(format!(
            "lag time constant must be positive, got {t2}"
        )));
    }
    if !(kc.is_finite() && t1.is_finite() && t2.is_finite()) {
        return Err(ControlError::InvalidParams(format!("non-finite parameters {params:?}")));
    }

    let n = plant.order();
    let washout = n;
    let input = n + 1;
    let a = plant.a();
    let s = plant.sensed_state();
    let tw = plant.washout_time_constant();
    let b_s = plant.b()[(s, 0)];

    let mut m = Matrix::zeros(n + 2, n + 2);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)];
        }
        m[(i, input)] = plant.b()[(i, 0)];
    }

    // Washout row.
    for j in 0..n {
        m[(washout, j)] = a[(s, j)];
    }
    m[(washout, washout)] = -1.0 / tw;
    m[(washout, input)] = b_s;

    // Controller row: lead gain times the washout row plus the lag terms.
    let lead = kc * t1 / t2;
    for j in 0..n + 2 {
        m[(input, j)] = lead * m[(washout, j)];
    }
    m[(input, washout)] += kc / t2;
    m[(input, input)] -= 1.0 / t2;

    if !m.is_finite() {
        return Err(ControlError::InvalidParams(format!(
            "closed-loop matrix is not finite for {params:?}"
        )));
    }
    Ok(m)
}

pub fn closed_loop_spectrum(
    plant: &StateSpacePlant,
    params: LeadLagParams,
) -> Result<Spectrum, ControlError> {
    Ok(eigenvalues(&assemble_closed_loop(plant, params)?)?)
}
