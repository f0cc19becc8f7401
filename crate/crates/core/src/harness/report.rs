use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{ExperimentConfig, HarnessError};
use crate::control::{closed_loop_spectrum, min_damping_ratio, LeadLagParams, StateSpacePlant};
use crate::numerics::Spectrum;
use crate::optim::{Algorithm, RunRecord};
use crate::space::SearchSpace;

/// Relative gap to the final best used for the convergence-speed metric.
const CONVERGENCE_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSpeed {
    /// Relative gap to the final best, e.g. 0.01.
    pub fraction: f64,
    pub per_seed: Vec<usize>,
    pub median: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub seeds: Vec<u64>,
    pub final_objectives: Vec<f64>,
    pub best_objective: f64,
    pub median_objective: f64,
    pub worst_objective: f64,
    pub best_seed: u64,
    pub best_params: LeadLagParams,
    /// Closed-loop spectrum recomputed from `best_params`.
    pub best_spectrum: Spectrum,
    /// Minimum damping ratio of `best_spectrum`.
    pub best_min_damping_ratio: f64,
    pub median_trace: Vec<f64>,
    pub generations_to_converge: ConvergenceSpeed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub bounds: SearchSpace,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<AlgorithmSummary>,
}

fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

impl ComparisonReport {
    pub fn from_runs(
        plant: &StateSpacePlant,
        config: &ExperimentConfig,
        runs: &[RunRecord],
    ) -> Result<Self, HarnessError> {
        let mut algorithms = Vec::new();
        for algorithm in config.algorithms.enabled() {
            let group: Vec<&RunRecord> = runs.iter().filter(|r| r.algorithm == algorithm).collect();
            if group.is_empty() {
                continue;
            }
            algorithms.push(summarize(plant, algorithm, &group)?);
        }
        Ok(Self {
            bounds: config.bounds.clone(),
            seeds: config.seeds.clone(),
            algorithms,
        })
    }

    pub fn summary(&self, algorithm: Algorithm) -> Option<&AlgorithmSummary> {
        self.algorithms.iter().find(|s| s.algorithm == algorithm)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Aligned plain-text tables: parameters, eigenvalues, objective statistics.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "Optimal controller parameters (best of {} seeds)", self.seeds.len());
        let _ = writeln!(out, "{:<6} {:>12} {:>10} {:>10} {:>8}", "alg", "Kc", "T1", "T2", "seed");
        for s in &self.algorithms {
            let p = s.best_params;
            let _ = writeln!(
                out,
                "{:<6} {:>12.4} {:>10.4} {:>10.4} {:>8}",
                s.algorithm.name().to_uppercase(),
                p.kc,
                p.t1,
                p.t2,
                s.best_seed
            );
        }

        let _ = writeln!(out, "\nClosed-loop eigenvalues at the best parameters");
        for s in &self.algorithms {
            let _ = writeln!(out, "{}:", s.algorithm.name().to_uppercase());
            for l in s.best_spectrum.iter() {
                let sign = if l.im < 0.0 { '-' } else { '+' };
                let _ = writeln!(out, "  {:>12.4} {sign} {:>9.4}i", l.re, l.im.abs());
            }
        }

        let _ = writeln!(out, "\nMinimum damping ratio");
        let _ = writeln!(
            out,
            "{:<6} {:>10} {:>10} {:>10} {:>14}",
            "alg", "best", "median", "worst", "gens to 1%"
        );
        for s in &self.algorithms {
            let _ = writeln!(
                out,
                "{:<6} {:>10.4} {:>10.4} {:>10.4} {:>14.1}",
                s.algorithm.name().to_uppercase(),
                s.best_objective,
                s.median_objective,
                s.worst_objective,
                s.generations_to_converge.median
            );
        }
        out
    }
}

fn summarize(
    plant: &StateSpacePlant,
    algorithm: Algorithm,
    group: &[&RunRecord],
) -> Result<AlgorithmSummary, HarnessError> {
    let finals: Vec<f64> = group.iter().map(|r| r.final_best_objective).collect();
    // First seed wins ties, matching the optimizers' tie rule.
    let best_run = group
        .iter()
        .fold(group[0], |acc, r| if r.final_best_objective > acc.final_best_objective { r } else { acc });
    let best_params = LeadLagParams::from_slice(&best_run.final_best_position)
        .map_err(HarnessError::Numerical)?;
    let best_spectrum = closed_loop_spectrum(plant, best_params).map_err(HarnessError::Numerical)?;
    let best_min_damping_ratio = min_damping_ratio(&best_spectrum).map_err(HarnessError::Numerical)?;

    let generations = group.iter().map(|r| r.best_objective_per_generation.len()).min().unwrap_or(0);
    let median_trace = (0..generations)
        .map(|g| {
            let column: Vec<f64> = group.iter().map(|r| r.best_objective_per_generation[g]).collect();
            median(&column)
        })
        .collect();
    let per_seed: Vec<usize> = group
        .iter()
        .map(|r| r.generations_to_within(CONVERGENCE_FRACTION))
        .collect();
    let speed_median = median(&per_seed.iter().map(|&g| g as f64).collect::<Vec<_>>());

    Ok(AlgorithmSummary {
        algorithm,
        seeds: group.iter().map(|r| r.seed).collect(),
        best_objective: best_run.final_best_objective,
        median_objective: median(&finals),
        worst_objective: finals.iter().copied().fold(f64::INFINITY, f64::min),
        final_objectives: finals,
        best_seed: best_run.seed,
        best_params,
        best_spectrum,
        best_min_damping_ratio,
        median_trace,
        generations_to_converge: ConvergenceSpeed {
            fraction: CONVERGENCE_FRACTION,
            per_seed,
            median: speed_median,
        },
    })
}
