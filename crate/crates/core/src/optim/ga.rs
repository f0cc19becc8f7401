//! Real-coded generational GA: binary tournament selection, blend (BLX-alpha)
//! crossover, uniform-resampling mutation and single-member elitism.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{
    argmax, check_probability, initialize, run_rng, Algorithm, BoxError, Elite, Evaluator,
    OptimError, RunRecord,
};
use crate::space::SearchSpace;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaConfig {
    pub mutation_probability: f64,
    pub crossover_probability: f64,
    /// BLX-alpha extension factor.
    pub crossover_coefficient: f64,
    pub population_size: usize,
    pub generations: usize,
    pub seed: u64,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            mutation_probability: 0.05,
            crossover_probability: 0.9,
            crossover_coefficient: 0.5,
            population_size: 50,
            generations: 200,
            seed: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), OptimError> {
        check_probability("mutation probability", self.mutation_probability)?;
        check_probability("crossover probability", self.crossover_probability)?;
        if !(self.crossover_coefficient >= 0.0 && self.crossover_coefficient.is_finite()) {
            return Err(OptimError::InvalidConfig(format!(
                "crossover coefficient must be non-negative, got {}",
                self.crossover_coefficient
            )));
        }
        if self.population_size < 2 {
            return Err(OptimError::PopulationTooSmall {
                required: 2,
                actual: self.population_size,
            });
        }
        Ok(())
    }
}

fn tournament<R: Rng>(values: &[f64], rng: &mut R) -> usize {
    let a = rng.random_range(0..values.len());
    let b = rng.random_range(0..values.len());
    if values[b] > values[a] {
        b
    } else {
        a
    }
}

fn blend<R: Rng>(p1: &[f64], p2: &[f64], alpha: f64, space: &SearchSpace, rng: &mut R) -> Vec<f64> {
    let mut child: Vec<f64> = p1
        .iter()
        .zip(p2)
        .map(|(&a, &b)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let spread = alpha * (hi - lo);
            if spread == 0.0 {
                lo
            } else {
                rng.random_range(lo - spread..=hi + spread)
            }
        })
        .collect();
    space.clamp_in_place(&mut child);
    child
}

/// Evaluates `population_size * (generations + 1)` points.
pub fn run_ga<F, E>(objective: F, space: &SearchSpace, config: &GaConfig) -> Result<RunRecord, OptimError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    config.validate()?;
    let mut rng = run_rng(config.seed);
    let mut eval = Evaluator::new(objective);
    let n = config.population_size;

    let (mut positions, mut values) = initialize(space, n, &mut eval, &mut rng)?;
    let mut best = Elite::from_population(&positions, &values);
    let mut trace = Vec::with_capacity(config.generations + 1);
    trace.push(best.value);

    for _ in 0..config.generations {
        let mut children: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        while children.len() < n {
            let p1 = &positions[tournament(&values, &mut rng)];
            let p2 = &positions[tournament(&values, &mut rng)];
            let (mut c1, mut c2) = if rng.random::<f64>() < config.crossover_probability {
                (
                    blend(p1, p2, config.crossover_coefficient, space, &mut rng),
                    blend(p1, p2, config.crossover_coefficient, space, &mut rng),
                )
            } else {
                (p1.clone(), p2.clone())
            };
            for child in [&mut c1, &mut c2] {
                for d in 0..child.len() {
                    if rng.random::<f64>() < config.mutation_probability {
                        child[d] = space.sample_dimension(d, &mut rng);
                    }
                }
            }
            children.push(c1);
            children.push(c2);
        }
        children.truncate(n);

        let child_values = children
            .iter()
            .map(|c| eval.eval(c))
            .collect::<Result<Vec<_>, _>>()?;
        positions = children;
        values = child_values;

        // Elitism: the previous best replaces the worst child if nothing beat it.
        let top = argmax(&values);
        if values[top] < best.value {
            let worst = values
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap_or(0);
            positions[worst] = best.position.clone();
            values[worst] = best.value;
        } else {
            best.offer(&positions[top], values[top]);
        }
        trace.push(best.value);
    }

    Ok(RunRecord {
        algorithm: Algorithm::Ga,
        seed: config.seed,
        best_objective_per_generation: trace,
        final_best_position: best.position,
        final_best_objective: best.value,
        evaluation_count: eval.count(),
    })
}
