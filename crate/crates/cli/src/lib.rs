//! Command-line front end for the `qcghost` library.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{diff_files, run_command, DiffSummary, RunOptions, RunOutcome};
pub use config::{Command, ExperimentConfig};
pub use error::CliError;
