use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use llc_tune::control::{min_damping_ratio, closed_loop_spectrum, LeadLagParams, StateSpacePlant};
use llc_tune::harness::{run_experiment, verify_reference_tables, ExperimentConfig, HarnessError};
use llc_tune::Spectrum;

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

/// Lead-lag controller tuning experiments.
#[derive(Parser, Debug)]
#[command(name = "tune", version, about)]
struct Cli {
    /// Experiment config (JSON). Runs the full comparison.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Replace the config's seed list; repeat for several seeds.
    #[arg(long = "seed", global = true)]
    seeds: Vec<u64>,

    /// Replace the config's output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute the reference parameter sets and compare against the built-in reference tables.
    VerifyTables {
        #[command(flatten)]
        plant: PlantArg,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the spectrum and minimum damping ratio, open loop or with a controller.
    Eig {
        #[command(flatten)]
        plant: PlantArg,
        #[arg(long, allow_hyphen_values = true)]
        kc: Option<f64>,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        t2: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct PlantArg {
    /// Plant JSON file. Defaults to the built-in reference plant.
    #[arg(long)]
    plant: Option<PathBuf>,
}

impl PlantArg {
    fn load(&self) -> Result<StateSpacePlant, (u8, String)> {
        match &self.plant {
            Some(p) => StateSpacePlant::from_json_file(p)
                .map_err(|e| (EXIT_CONFIG, format!("{}: {e}", p.display()))),
            None => Ok(StateSpacePlant::reference()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        None => experiment(&cli),
        Some(Command::VerifyTables { plant, json }) => verify(plant, *json),
        Some(Command::Eig { plant, kc, t1, t2 }) => eig(plant, *kc, *t1, *t2),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn harness_failure(e: HarnessError) -> (u8, String) {
    let code = if e.exit_code() == 1 { EXIT_CONFIG } else { EXIT_NUMERICAL };
    (code, e.to_string())
}

fn experiment(cli: &Cli) -> Result<(), (u8, String)> {
    let path = cli
        .config
        .as_ref()
        .ok_or((EXIT_CONFIG, "--config <path> is required to run an experiment".to_string()))?;
    let mut config = ExperimentConfig::from_file(path).map_err(harness_failure)?;
    if !cli.seeds.is_empty() {
        config.seeds = cli.seeds.clone();
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    let report = run_experiment(&config).map_err(harness_failure)?;
    print!("{}", report.to_table());
    println!("\nwrote {}", config.output_dir.display());
    Ok(())
}

fn verify(plant: &PlantArg, json: bool) -> Result<(), (u8, String)> {
    let plant = plant.load()?;
    let summary = verify_reference_tables(&plant);
    if json {
        println!("{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    } else {
        print!("{}", summary.to_text());
    }
    if summary.all_passed() {
        Ok(())
    } else {
        let failed = summary.failures().count();
        Err((EXIT_MISMATCH, format!("{failed} table check(s) did not match")))
    }
}

fn eig(plant: &PlantArg, kc: Option<f64>, t1: Option<f64>, t2: Option<f64>) -> Result<(), (u8, String)> {
    let plant = plant.load()?;
    let spectrum = match (kc, t1, t2) {
        (None, None, None) => {
            println!("open loop");
            plant.open_loop_spectrum()
        }
        (Some(kc), Some(t1), Some(t2)) => {
            println!("closed loop, Kc = {kc}, T1 = {t1}, T2 = {t2}");
            closed_loop_spectrum(&plant, LeadLagParams::new(kc, t1, t2))
        }
        _ => {
            return Err((EXIT_CONFIG, "give all of --kc, --t1 and --t2, or none".into()));
        }
    };
    let code_for = |e: &llc_tune::control::ControlError| match e {
        llc_tune::control::ControlError::InvalidParams(_) => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    };
    let spectrum = spectrum.map_err(|e| (code_for(&e), e.to_string()))?;
    print_spectrum(&spectrum);
    let zeta = min_damping_ratio(&spectrum).map_err(|e| (code_for(&e), e.to_string()))?;
    println!("min damping ratio {zeta:.6}");
    Ok(())
}

fn print_spectrum(s: &Spectrum) {
    for l in s.iter() {
        let sign = if l.im < 0.0 { '-' } else { '+' };
        println!("  {:>14.6} {sign} {:>12.6}i", l.re, l.im.abs());
    }
}
