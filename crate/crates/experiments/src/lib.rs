//! Experiment harness for random n-sided dice: config, runners and report
//! emission behind the `dice` binary.

pub mod cli;
pub mod config;
pub mod report;
pub mod run;

pub use config::{ConfigError, ExperimentConfig, Format, Kind};
pub use report::{
    emit_report, Check, Estimate, ExactValue, ExperimentReport, Section, Status, Summary,
};
pub use run::{run, RunError};
