//! Bounded black-box maximizers: butterfly optimization, a real-coded GA and DE/rand/1/bin.
//!
//! All three maximize. Objectives are `FnMut(&[f64]) -> Result<f64, E>`; every
//! evaluated position lies inside the search space. Randomness comes from a
//! per-run ChaCha8 stream seeded from the config, so runs are bit-reproducible.

mod boa;
mod de;
mod ga;

pub use boa::{
    boa_global_step, boa_local_step, floor_shift, fragrance, global_move, intensities,
    intensity_from_objective, local_move, run_boa, run_boa_with_stats, BoaConfig, BoaStats,
};
pub use de::{run_de, DeConfig};
pub use ga::{run_ga, GaConfig};

use std::convert::Infallible;
use std::error::Error as StdError;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::space::{SearchSpace, SpaceError};

pub type BoxError = Box<dyn StdError + Send + Sync + 'static>;

#[derive(Debug, thiserror::Error)]
pub enum OptimError {
    #[error("objective failed at {position:?}: {source}")]
    Objective {
        position: Vec<f64>,
        #[source]
        source: BoxError,
    },
    #[error("objective returned non-finite value {value} at {position:?}")]
    NonFiniteObjective { position: Vec<f64>, value: f64 },
    #[error("stimulus intensity must be non-negative, got {0}")]
    NegativeIntensity(f64),
    #[error("population of {actual} is too small, need at least {required}")]
    PopulationTooSmall { required: usize, actual: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Boa,
    Ga,
    De,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Boa, Algorithm::Ga, Algorithm::De];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Boa => "boa",
            Algorithm::Ga => "ga",
            Algorithm::De => "de",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "boa" => Ok(Algorithm::Boa),
            "ga" => Ok(Algorithm::Ga),
            "de" => Ok(Algorithm::De),
            other => Err(format!("unknown algorithm `{other}` (expected boa, ga or de)")),
        }
    }
}

/// Outcome of one seeded optimization run.
///
/// `best_objective_per_generation[0]` is the best of the initial population and
/// entry `g` the best seen after generation `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub best_objective_per_generation: Vec<f64>,
    pub final_best_position: Vec<f64>,
    pub final_best_objective: f64,
    pub evaluation_count: usize,
}

impl RunRecord {
    /// First generation whose best is within `fraction` (relative) of the final best.
    pub fn generations_to_within(&self, fraction: f64) -> usize {
        let last = self.final_best_objective;
        let tol = fraction * last.abs();
        self.best_objective_per_generation
            .iter()
            .position(|&v| last - v <= tol)
            .unwrap_or(self.best_objective_per_generation.len().saturating_sub(1))
    }
}

/// Wraps an infallible function as an objective.
pub fn infallible<F>(f: F) -> impl FnMut(&[f64]) -> Result<f64, Infallible>
where
    F: Fn(&[f64]) -> f64,
{
    move |x| Ok(f(x))
}

pub(crate) fn run_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Counts evaluations and attaches the offending position to failures.
pub(crate) struct Evaluator<F> {
    objective: F,
    count: usize,
}

impl<F, E> Evaluator<F>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
{
    pub(crate) fn new(objective: F) -> Self {
        Self { objective, count: 0 }
    }

    pub(crate) fn eval(&mut self, x: &[f64]) -> Result<f64, OptimError> {
        self.count += 1;
        match (self.objective)(x) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(v) => Err(OptimError::NonFiniteObjective {
                position: x.to_vec(),
                value: v,
            }),
            Err(e) => Err(OptimError::Objective {
                position: x.to_vec(),
                source: e.into(),
            }),
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}

/// Best-so-far tracker. Ties keep the earlier entry.
#[derive(Debug, Clone)]
pub(crate) struct Elite {
    pub(crate) position: Vec<f64>,
    pub(crate) value: f64,
}

impl Elite {
    pub(crate) fn from_population(positions: &[Vec<f64>], values: &[f64]) -> Self {
        let idx = argmax(values);
        Self {
            position: positions[idx].clone(),
            value: values[idx],
        }
    }

    pub(crate) fn offer(&mut self, position: &[f64], value: f64) {
        if value > self.value {
            self.value = value;
            self.position.clear();
            self.position.extend_from_slice(position);
        }
    }
}

/// Index of the first maximum.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<(), OptimError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(OptimError::InvalidConfig(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// Initial population: uniform in the box, evaluated in order.
pub(crate) fn initialize<F, E, R>(
    space: &SearchSpace,
    size: usize,
    eval: &mut Evaluator<F>,
    rng: &mut R,
) -> Result<(Vec<Vec<f64>>, Vec<f64>), OptimError>
where
    F: FnMut(&[f64]) -> Result<f64, E>,
    E: Into<BoxError>,
    R: rand::Rng,
{
    let positions: Vec<Vec<f64>> = (0..size).map(|_| space.sample(rng)).collect();
    let values = positions
        .iter()
        .map(|x| eval.eval(x))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((positions, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmax_prefers_first() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), 1);
        assert_eq!(argmax(&[5.0]), 0);
    }

    #[test]
    fn elite_only_improves() {
        let mut e = Elite::from_population(&[vec![0.0], vec![1.0]], &[2.0, 2.0]);
        assert_eq!(e.position, vec![0.0]);
        e.offer(&[5.0], 1.0);
        e.offer(&[6.0], 2.0);
        assert_eq!(e.position, vec![0.0]);
        e.offer(&[7.0], 2.5);
        assert_eq!((e.position.clone(), e.value), (vec![7.0], 2.5));
    }

    #[test]
    fn evaluator_reports_position() {
        let mut ev = Evaluator::new(|x: &[f64]| {
            if x[0] > 0.0 {
                Err::<f64, BoxError>("boom".into())
            } else {
                Ok(f64::NAN)
            }
        });
        match ev.eval(&[1.0]) {
            Err(OptimError::Objective { position, .. }) => assert_eq!(position, vec![1.0]),
            other => panic!("{other:?}"),
        }
        assert!(matches!(ev.eval(&[-1.0]), Err(OptimError::NonFiniteObjective { .. })));
        assert_eq!(ev.count(), 2);
    }

    #[test]
    fn generations_to_within() {
        let r = RunRecord {
            algorithm: Algorithm::Boa,
            seed: 0,
            best_objective_per_generation: vec![0.1, 0.4, 0.496, 0.5],
            final_best_position: vec![],
            final_best_objective: 0.5,
            evaluation_count: 0,
        };
        assert_eq!(r.generations_to_within(0.01), 2);
        assert_eq!(r.generations_to_within(0.0), 3);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("pso".parse::<Algorithm>().is_err());
    }
}
