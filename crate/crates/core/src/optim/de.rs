//! DE/rand/1/bin with greedy one-to-one replacement.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    check_probability, initialize, run_rng, Algorithm, BoxError, Elite, Evaluator, OptimError,
    RunRecord,
};
use crate::space::SearchSpace;

const MIN_POPULATION: usize = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DeConfig {
    pub crossover_rate: f64,
    pub differential_weight: f64,
    pub population_size: usize,
    pub generations: usize,
    pub seed: u64,
}

impl Default for DeConfig {
    fn default() -> Self {
        Self {
            crossover_rate: 0.9,
            differential_weight: 0.5,
            population_size: 50,
            generations: 200,
            seed: 0,
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<(), OptimError> {
        check_probability("crossover rate", self.crossover_rate)?;
        let f = self.differential_weight;
        if !(0.0..=2.0).contains(&f) {
            return Err(OptimError::InvalidConfig(format!(
                "differential weight must lie in [0, 2], got {f}"
            )));
        }
        if self.population_size < MIN_POPULATION {
            return Err(OptimError::PopulationTooSmall {
                required: MIN_POPULATION,
                actual: self.population_size,
            });
        }
        Ok(())
    }
}

/// Three distinct indices, all different from `target`.
fn pick_three<R: Rng>(n: usize, target: usize, rng: &mut R) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    for slot in 0..3 {
        picked[slot] = loop {
            let c = rng.random_range(0..n);
            if c != target && !picked[..slot].contains(&c) {
                break c;
            }
        };
    }
    picked
}

/// Pulls an out-of-range component halfway back from the target toward the violated bound.
fn repair(value: f64, target: f64, lo: f64, hi: f64) -> f64 {
    if value < lo {
        (lo + target) / 2.0
    } else if value > hi {
        (hi + target) / 2.0
    } else {
        value
    }
}

/// Evaluates `population_size * (generations + 1)` points.
pub fn run_de<F, E>(objective: F, space: &SearchSpace, config: &DeConfig) -> Result<RunRecord, OptimError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    config.validate()?;
    let mut rng = run_rng(config.seed);
    let mut eval = Evaluator::new(objective);
    let n = config.population_size;
    let dim = space.dimension();

    let (mut positions, mut values) = initialize(space, n, &mut eval, &mut rng)?;
    let mut best = Elite::from_population(&positions, &values);
    let mut trace = Vec::with_capacity(config.generations + 1);
    trace.push(best.value);

    for _ in 0..config.generations {
        let mut trials = Vec::with_capacity(n);
        for i in 0..n {
            let [r1, r2, r3] = pick_three(n, i, &mut rng);
            let forced = rng.random_range(0..dim);
            let target = &positions[i];
            let trial: Vec<f64> = (0..dim)
                .map(|d| {
                    if d == forced || rng.random::<f64>() < config.crossover_rate {
                        let v = positions[r1][d]
                            + config.differential_weight * (positions[r2][d] - positions[r3][d]);
                        repair(v, target[d], space.lower()[d], space.upper()[d])
                    } else {
                        target[d]
                    }
                })
                .collect();
            trials.push(trial);
        }
        for (i, trial) in trials.into_iter().enumerate() {
            let value = eval.eval(&trial)?;
            best.offer(&trial, value);
            if value >= values[i] {
                positions[i] = trial;
                values[i] = value;
            }
        }
        trace.push(best.value);
    }

    Ok(RunRecord {
        algorithm: Algorithm::De,
        seed: config.seed,
        best_objective_per_generation: trace,
        final_best_position: best.position,
        final_best_objective: best.value,
        evaluation_count: eval.count(),
    })
}
