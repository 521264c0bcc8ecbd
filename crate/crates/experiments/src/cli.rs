use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dice_core::samplers::Method;
use dice_core::Model;

use crate::config::{ExperimentConfig, Format, Kind};

#[derive(Debug, Parser)]
#[command(name = "dice", version, about = "Experiments on random n-sided dice")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw dice and report sampler statistics.
    Sample(ExperimentArgs),
    /// Compare two dice.
    Beats(BeatsArgs),
    /// List all multiset dice and exact counts.
    Enumerate(ExperimentArgs),
    /// Frequency of ties between two random dice.
    Ties(ExperimentArgs),
    /// P(A beats C | A beats B and B beats C).
    Transitivity(ExperimentArgs),
    /// Triple census, degree concentration and patterns of a random tournament.
    Tournament(ExperimentArgs),
    /// Exact convolution, Gaussian fit and tail checks for random dice.
    Clt(ExperimentArgs),
    /// Run an experiment described by a JSON config file.
    Run(RunArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModelArg {
    Balanced,
    Multiset,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Balanced => Model::BalancedSequence,
            ModelArg::Multiset => Model::MultisetCanonical,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Rejection,
    Completion,
    Exact,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Rejection => Method::Rejection,
            MethodArg::Completion => Method::Completion,
            MethodArg::Exact => Method::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Plotdata,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Plotdata => Format::Plotdata,
        }
    }
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Side counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Trials per n (pairs, triples, tournaments or dice, by experiment).
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "balanced")]
    pub model: ModelArg,
    /// Defaults to completion for balanced dice and exact for multisets.
    #[arg(long, value_enum)]
    pub sampler: Option<MethodArg>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    /// Dice per tournament.
    #[arg(long, default_value_t = 200)]
    pub m: usize,
    /// Pattern sizes for the tournament census.
    #[arg(long, value_delimiter = ',', default_values_t = [3, 4])]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Characteristic-function grid points per axis; 0 disables.
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    /// Tail constants C, comma separated.
    #[arg(long = "tail-c", value_delimiter = ',', default_values_t = [1.0, 1.5])]
    pub tail_c: Vec<f64>,
    #[arg(long, default_value_t = 1e7)]
    pub box_alpha: f64,
    #[arg(long, default_value_t = 1e9)]
    pub box_beta: f64,
    /// Add exact enumeration values where the caps allow.
    #[arg(long)]
    pub exact: bool,
    /// Record wall time in the report.
    #[arg(long)]
    pub timing: bool,
    /// Also write the resolved config as JSON.
    #[arg(long)]
    pub save_config: Option<PathBuf>,
}

impl ExperimentArgs {
    pub fn to_config(&self, kind: Kind) -> ExperimentConfig {
        ExperimentConfig {
            trials: self.trials.unwrap_or(kind.default_trials()),
            model: self.model.into(),
            sampler: self.sampler.map(Method::from),
            threads: self.threads,
            out: self.out.clone(),
            format: self.format.into(),
            m: self.m,
            k: self.k.clone(),
            epsilon: self.epsilon,
            grid: self.grid,
            tail_c: self.tail_c.clone(),
            box_alpha: self.box_alpha,
            box_beta: self.box_beta,
            exact: self.exact,
            timing: self.timing,
            ..ExperimentConfig::new(kind, self.n.clone(), self.seed)
        }
    }
}

#[derive(Debug, Args)]
pub struct BeatsArgs {
    /// Faces of the first die, comma separated.
    #[arg(long)]
    pub a: String,
    /// Faces of the second die, comma separated.
    #[arg(long)]
    pub b: String,
    #[arg(long, value_enum, default_value = "balanced")]
    pub model: ModelArg,
    /// Use the quadratic reference counter.
    #[arg(long)]
    pub reference: bool,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON config file.
    pub config: PathBuf,
    /// Overrides the file's thread count.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Overrides the file's output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn flags_map_to_config() {
        let cli = Cli::try_parse_from([
            "dice",
            "tournament",
            "--n",
            "50,100",
            "--seed",
            "3",
            "--m",
            "64",
            "--k",
            "3",
            "--epsilon",
            "0.2",
            "--model",
            "multiset",
            "--format",
            "csv",
            "--threads",
            "2",
        ])
        .unwrap();
        let Command::Tournament(args) = cli.command else {
            panic!("wrong subcommand")
        };
        let cfg = args.to_config(Kind::Tournament);
        assert_eq!(cfg.n, vec![50, 100]);
        assert_eq!(
            (cfg.seed, cfg.m, cfg.k.clone(), cfg.epsilon),
            (3, 64, vec![3], 0.2)
        );
        assert_eq!(cfg.model, Model::MultisetCanonical);
        assert_eq!(
            (cfg.format, cfg.threads, cfg.trials),
            (Format::Csv, Some(2), 1)
        );
    }

    #[test]
    fn n_is_required() {
        assert!(Cli::try_parse_from(["dice", "ties"]).is_err());
    }
}
