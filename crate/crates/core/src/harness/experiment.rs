use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{io_err, ComparisonReport, ExperimentConfig, HarnessError};
use crate::control::{LeadLagProblem, StateSpacePlant};
use crate::harness::AlgorithmSet;
use crate::optim::{run_boa, run_de, run_ga, Algorithm, RunRecord};

pub const CSV_HEADER: &str = "generation,best_objective";

/// One seeded run of `algorithm` on the lead-lag problem.
pub fn run_one(
    problem: &LeadLagProblem,
    algorithms: &AlgorithmSet,
    algorithm: Algorithm,
    seed: u64,
) -> Result<RunRecord, HarnessError> {
    let objective = |x: &[f64]| problem.evaluate(x);
    let space = problem.space();
    let missing = || HarnessError::Config(format!("{algorithm} is not configured"));
    let result = match algorithm {
        Algorithm::Boa => {
            let mut cfg = algorithms.boa.clone().ok_or_else(missing)?;
            cfg.seed = seed;
            run_boa(objective, space, &cfg)
        }
        Algorithm::Ga => {
            let mut cfg = algorithms.ga.clone().ok_or_else(missing)?;
            cfg.seed = seed;
            run_ga(objective, space, &cfg)
        }
        Algorithm::De => {
            let mut cfg = algorithms.de.clone().ok_or_else(missing)?;
            cfg.seed = seed;
            run_de(objective, space, &cfg)
        }
    };
    result.map_err(|source| HarnessError::Run {
        algorithm,
        seed,
        source,
    })
}

/// Runs every (algorithm, seed) pair and builds the report. No file I/O.
///
/// Runs execute in parallel; results are collected in (algorithm, seed) order.
pub fn execute(
    config: &ExperimentConfig,
    plant: &StateSpacePlant,
) -> Result<(Vec<RunRecord>, ComparisonReport), HarnessError> {
    config.validate()?;
    let problem = LeadLagProblem::new(plant.clone(), config.bounds.clone())
        .map_err(|e| HarnessError::Config(e.to_string()))?;
    let jobs: Vec<(Algorithm, u64)> = config
        .algorithms
        .enabled()
        .into_iter()
        .flat_map(|a| config.seeds.iter().map(move |&s| (a, s)))
        .collect();
    let runs = jobs
        .par_iter()
        .map(|&(a, s)| run_one(&problem, &config.algorithms, a, s))
        .collect::<Result<Vec<_>, _>>()?;
    let report = ComparisonReport::from_runs(plant, config, &runs)?;
    Ok((runs, report))
}

/// Loads the plant, runs the experiment and writes per-run CSVs, `report.json` and `report.txt`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ComparisonReport, HarnessError> {
    config.validate()?;
    let plant = StateSpacePlant::from_json_file(&config.plant_file).map_err(HarnessError::Plant)?;
    let (runs, report) = execute(config, &plant)?;

    let curves = config.output_dir.join("convergence");
    std::fs::create_dir_all(&curves).map_err(io_err(&curves))?;
    for run in &runs {
        write_convergence_csv(&curves, run)?;
    }
    let json_path = config.output_dir.join("report.json");
    std::fs::write(&json_path, report.to_json()).map_err(io_err(&json_path))?;
    let table_path = config.output_dir.join("report.txt");
    std::fs::write(&table_path, report.to_table()).map_err(io_err(&table_path))?;
    Ok(report)
}

/// Writes `<dir>/<algorithm>_seed<seed>.csv`; row 0 is the initial population.
pub fn write_convergence_csv(dir: &Path, run: &RunRecord) -> Result<PathBuf, HarnessError> {
    let path = dir.join(format!("{}_seed{}.csv", run.algorithm, run.seed));
    let mut out = String::with_capacity(32 * run.best_objective_per_generation.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (g, v) in run.best_objective_per_generation.iter().enumerate() {
        let _ = writeln!(out, "{g},{v}");
    }
    std::fs::write(&path, out).map_err(io_err(&path))?;
    Ok(path)
}
