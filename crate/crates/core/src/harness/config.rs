use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{io_err, HarnessError};
use crate::optim::{Algorithm, BoaConfig, DeConfig, GaConfig};
use crate::space::SearchSpace;

/// Algorithms to run and their settings. A missing entry is not run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSet {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boa: Option<BoaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ga: Option<GaConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub de: Option<DeConfig>,
}

impl AlgorithmSet {
    /// All three with their default settings.
    pub fn all_default() -> Self {
        Self {
            boa: Some(BoaConfig::default()),
            ga: Some(GaConfig::default()),
            de: Some(DeConfig::default()),
        }
    }

    pub fn enabled(&self) -> Vec<Algorithm> {
        let mut out = Vec::new();
        if self.boa.is_some() {
            out.push(Algorithm::Boa);
        }
        if self.ga.is_some() {
            out.push(Algorithm::Ga);
        }
        if self.de.is_some() {
            out.push(Algorithm::De);
        }
        out
    }

    pub fn generations(&self, algorithm: Algorithm) -> Option<usize> {
        match algorithm {
            Algorithm::Boa => self.boa.as_ref().map(|c| c.generations),
            Algorithm::Ga => self.ga.as_ref().map(|c| c.generations),
            Algorithm::De => self.de.as_ref().map(|c| c.generations),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub plant_file: PathBuf,
    #[serde(default = "SearchSpace::lead_lag_default")]
    pub bounds: SearchSpace,
    pub algorithms: AlgorithmSet,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// Parses a config document. Paths are kept as written.
    pub fn from_json_str(s: &str) -> Result<Self, HarnessError> {
        let cfg: Self =
            serde_json::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads a config file; relative paths inside it resolve against the file's directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(io_err(path))?;
        let mut cfg = Self::from_json_str(&text)
            .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new(""));
        cfg.plant_file = resolve(base, &cfg.plant_file);
        cfg.output_dir = resolve(base, &cfg.output_dir);
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.algorithms.enabled().is_empty() {
            return Err(HarnessError::Config("at least one algorithm is required".into()));
        }
        if self.seeds.is_empty() {
            return Err(HarnessError::Config("at least one seed is required".into()));
        }
        if self.bounds.dimension() != 3 {
            return Err(HarnessError::Config(format!(
                "bounds must have 3 dimensions (kc, t1, t2), got {}",
                self.bounds.dimension()
            )));
        }
        if self.bounds.lower()[2] <= 0.0 {
            return Err(HarnessError::Config("lower bound of t2 must be positive".into()));
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(HarnessError::Config("seeds must be distinct".into()));
        }
        Ok(())
    }
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}
