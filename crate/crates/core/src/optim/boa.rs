//! Butterfly optimization.
//!
//! Every butterfly emits fragrance `f = c I^a` from its stimulus intensity `I`.
//! Each generation it either steps toward the best butterfly found so far
//! (probability `p`) or takes a random walk between two population members.
//! Moves are always accepted; the best-so-far only improves.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_probability, initialize, run_rng, Algorithm, BoxError, Elite, Evaluator, OptimError,
    RunRecord,
};
use crate::space::SearchSpace;

/// Lower floor on shifted intensities.
const MIN_INTENSITY: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BoaConfig {
    pub sensory_modality_c: f64,
    pub power_exponent_a: f64,
    pub switch_probability_p: f64,
    pub population_size: usize,
    pub generations: usize,
    pub seed: u64,
}

impl Default for BoaConfig {
    fn default() -> Self {
        Self {
            sensory_modality_c: 0.01,
            power_exponent_a: 0.1,
            switch_probability_p: 0.8,
            population_size: 50,
            generations: 200,
            seed: 0,
        }
    }
}

impl BoaConfig {
    pub fn validate(&self) -> Result<(), OptimError> {
        let c = self.sensory_modality_c;
        let a = self.power_exponent_a;
        if !(c > 0.0 && c <= 1.0) {
            return Err(OptimError::InvalidConfig(format!("sensory modality c must lie in (0, 1], got {c}")));
        }
        if !(a > 0.0 && a <= 1.0) {
            return Err(OptimError::InvalidConfig(format!("power exponent a must lie in (0, 1], got {a}")));
        }
        check_probability("switch probability p", self.switch_probability_p)?;
        if self.population_size == 0 {
            return Err(OptimError::PopulationTooSmall { required: 1, actual: 0 });
        }
        Ok(())
    }
}

/// Number of moves of each kind made during a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoaStats {
    pub global_steps: usize,
    pub local_steps: usize,
}

/// `c * intensity^a`.
pub fn fragrance(intensity: f64, c: f64, a: f64) -> Result<f64, OptimError> {
    if !(intensity >= 0.0) {
        return Err(OptimError::NegativeIntensity(intensity));
    }
    Ok(c * intensity.powf(a))
}

/// Population minimum minus one; makes every shifted value at least 1.
pub fn floor_shift(values: &[f64]) -> f64 {
    values.iter().copied().fold(f64::INFINITY, f64::min) - 1.0
}

pub fn intensity_from_objective(objective_value: f64, floor_shift: f64) -> f64 {
    (objective_value - floor_shift).max(MIN_INTENSITY)
}

/// Strictly positive, order-preserving intensities for one generation.
pub fn intensities(values: &[f64]) -> Vec<f64> {
    let shift = floor_shift(values);
    values
        .iter()
        .map(|&v| intensity_from_objective(v, shift))
        .collect()
}

/// `x + (r^2 g - x) f`, unclamped.
pub fn global_move(x: &[f64], best: &[f64], f: f64, r: f64) -> Vec<f64> {
    let r2 = r * r;
    x.iter()
        .zip(best)
        .map(|(&xi, &gi)| xi + (r2 * gi - xi) * f)
        .collect()
}

/// `x + (r^2 x_j - x_k) f`, unclamped.
pub fn local_move(x: &[f64], xj: &[f64], xk: &[f64], f: f64, r: f64) -> Vec<f64> {
    let r2 = r * r;
    x.iter()
        .zip(xj.iter().zip(xk))
        .map(|(&xi, (&a, &b))| xi + (r2 * a - b) * f)
        .collect()
}

/// Global move with one fresh `r ~ U[0, 1]`, clamped to the box.
pub fn boa_global_step<R: Rng + ?Sized>(
    x: &[f64],
    best: &[f64],
    f: f64,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let r: f64 = rng.random();
    let mut next = global_move(x, best, f, r);
    space.clamp_in_place(&mut next);
    next
}

/// Local random walk with one fresh `r ~ U[0, 1]`, clamped to the box.
pub fn boa_local_step<R: Rng + ?Sized>(
    x: &[f64],
    xj: &[f64],
    xk: &[f64],
    f: f64,
    space: &SearchSpace,
    rng: &mut R,
) -> Vec<f64> {
    let r: f64 = rng.random();
    let mut next = local_move(x, xj, xk, f, r);
    space.clamp_in_place(&mut next);
    next
}

pub fn run_boa<F, E>(objective: F, space: &SearchSpace, config: &BoaConfig) -> Result<RunRecord, OptimError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    run_boa_with_stats(objective, space, config).map(|(record, _)| record)
}

pub fn run_boa_with_stats<F, E>(
    objective: F,
    space: &SearchSpace,
    config: &BoaConfig,
) -> Result<(RunRecord, BoaStats), OptimError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    config.validate()?;
    let mut rng = run_rng(config.seed);
    let mut eval = Evaluator::new(objective);
    let n = config.population_size;
    let mut stats = BoaStats::default();

    let (mut positions, mut values) = initialize(space, n, &mut eval, &mut rng)?;
    let mut best = Elite::from_population(&positions, &values);
    let mut trace = Vec::with_capacity(config.generations + 1);
    trace.push(best.value);

    for _ in 0..config.generations {
        let scents: Vec<f64> = intensities(&values)
            .into_iter()
            .map(|i| fragrance(i, config.sensory_modality_c, config.power_exponent_a))
            .collect::<Result<_, _>>()?;

        for i in 0..n {
            let next = if rng.random::<f64>() < config.switch_probability_p {
                stats.global_steps += 1;
                boa_global_step(&positions[i], &best.position, scents[i], space, &mut rng)
            } else {
                stats.local_steps += 1;
                let j = rng.random_range(0..n);
                let k = rng.random_range(0..n);
                boa_local_step(&positions[i], &positions[j], &positions[k], scents[i], space, &mut rng)
            };
            let value = eval.eval(&next)?;
            best.offer(&next, value);
            positions[i] = next;
            values[i] = value;
        }
        trace.push(best.value);
    }

    let record = RunRecord {
        algorithm: Algorithm::Boa,
        seed: config.seed,
        best_objective_per_generation: trace,
        final_best_position: best.position,
        final_best_objective: best.value,
        evaluation_count: eval.count(),
    };
    Ok((record, stats))
}
