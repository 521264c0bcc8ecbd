use std::path::PathBuf;

use dice_core::enumeration::Caps;
use dice_core::samplers::{DiceSource, Method};
use dice_core::Model;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Ties,
    Transitivity,
    Tournament,
    Clt,
    Enumerate,
    Sample,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Ties => "ties",
            Kind::Transitivity => "transitivity",
            Kind::Tournament => "tournament",
            Kind::Clt => "clt",
            Kind::Enumerate => "enumerate",
            Kind::Sample => "sample",
        }
    }

    pub fn default_trials(self) -> u64 {
        match self {
            Kind::Ties | Kind::Transitivity => 10_000,
            Kind::Tournament | Kind::Enumerate => 1,
            Kind::Clt => 20,
            Kind::Sample => 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Plotdata,
}

/// Everything that determines an experiment's output, plus where to put it.
/// `threads`, `out` and `timing` never affect the numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: Kind,
    pub n: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    pub model: Model,
    /// `None` picks the model's default method.
    #[serde(default)]
    pub sampler: Option<Method>,
    #[serde(default)]
    pub threads: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    /// Dice per tournament.
    #[serde(default = "default_m")]
    pub m: usize,
    /// Pattern sizes for the tournament census.
    #[serde(default = "default_k")]
    pub k: Vec<usize>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    /// Points per axis of the characteristic-function grid; 0 skips it.
    #[serde(default = "default_grid")]
    pub grid: usize,
    /// Tail constants `C`.
    #[serde(default = "default_tail_c")]
    pub tail_c: Vec<f64>,
    /// Box constants for the characteristic-function check.
    #[serde(default = "default_box_alpha")]
    pub box_alpha: f64,
    #[serde(default = "default_box_beta")]
    pub box_beta: f64,
    /// Also compute exact values by enumeration where the caps allow.
    #[serde(default)]
    pub exact: bool,
    /// Record wall time in the report (breaks byte-identical output).
    #[serde(default)]
    pub timing: bool,
}

fn default_m() -> usize {
    200
}
fn default_k() -> Vec<usize> {
    vec![3, 4]
}
fn default_epsilon() -> f64 {
    0.1
}
fn default_grid() -> usize {
    33
}
fn default_tail_c() -> Vec<f64> {
    vec![1.0, 1.5]
}
fn default_box_alpha() -> f64 {
    1e7
}
fn default_box_beta() -> f64 {
    1e9
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("at least one value of n is required")]
    NoSizes,
    #[error("n must be at least 1")]
    ZeroSides,
    #[error("trials must be at least 1")]
    ZeroTrials,
    #[error("m must be at least 1")]
    ZeroM,
    #[error("pattern size k = {0} is not supported (use 3 or 4)")]
    PatternSize(usize),
    #[error("epsilon = {0} must lie in (0, 0.5]")]
    Epsilon(f64),
    #[error("grid = {0} exceeds 4096 points per axis")]
    Grid(usize),
    #[error("tail constant C = {0} must be positive and finite")]
    TailConstant(f64),
    #[error("box constants must be positive and finite")]
    BoxConstants,
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    EnumerationCap { n: usize, cap: usize },
    #[error("sampler: {0}")]
    Sampler(String),
}

impl ExperimentConfig {
    pub fn new(kind: Kind, n: Vec<usize>, seed: u64) -> Self {
        ExperimentConfig {
            kind,
            n,
            trials: kind.default_trials(),
            seed,
            model: Model::BalancedSequence,
            sampler: None,
            threads: None,
            out: None,
            format: Format::Json,
            m: default_m(),
            k: default_k(),
            epsilon: default_epsilon(),
            grid: default_grid(),
            tail_c: default_tail_c(),
            box_alpha: default_box_alpha(),
            box_beta: default_box_beta(),
            exact: false,
            timing: false,
        }
    }

    pub fn source(&self) -> DiceSource {
        match self.sampler {
            Some(method) => DiceSource::new(self.model, method),
            None => DiceSource::default_for(self.model),
        }
    }

    /// The part of the config that is echoed into reports.
    pub fn echo(&self) -> ExperimentConfig {
        ExperimentConfig {
            threads: None,
            out: None,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n.is_empty() {
            return Err(ConfigError::NoSizes);
        }
        if self.n.contains(&0) {
            return Err(ConfigError::ZeroSides);
        }
        if self.trials == 0 {
            return Err(ConfigError::ZeroTrials);
        }
        if let Some(&k) = self.k.iter().find(|&&k| k != 3 && k != 4) {
            return Err(ConfigError::PatternSize(k));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 0.5) {
            return Err(ConfigError::Epsilon(self.epsilon));
        }
        if self.grid > 4096 {
            return Err(ConfigError::Grid(self.grid));
        }
        if let Some(&c) = self.tail_c.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(ConfigError::TailConstant(c));
        }
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !positive(self.box_alpha) || !positive(self.box_beta) {
            return Err(ConfigError::BoxConstants);
        }
        match self.kind {
            Kind::Tournament if self.m == 0 => return Err(ConfigError::ZeroM),
            Kind::Enumerate => {
                let cap = Caps::default().enumerate;
                if let Some(&n) = self.n.iter().find(|&&n| n > cap) {
                    return Err(ConfigError::EnumerationCap { n, cap });
                }
            }
            _ => {}
        }
        if self.kind != Kind::Enumerate {
            let source = self.source();
            for &n in &self.n {
                source
                    .prepare(n)
                    .map_err(|e| ConfigError::Sampler(e.to_string()))?;
            }
        }
        Ok(())
    }
}
