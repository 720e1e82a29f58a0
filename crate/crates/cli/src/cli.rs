use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qcghost::dynamics::ModelKind;

use crate::config::{parse_model, read_config_file, Command, ExperimentConfig, Overrides, OUTPUT_ENV};
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "qcghost", version, about = "Ghost-force error experiments for 1D quasicontinuum dynamics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Sub>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Integrate an error model with velocity Verlet and write a trajectory CSV.
    Simulate,
    /// Evaluate the closed-form Model I solution and write a trajectory CSV.
    Spectral {
        /// Use the sample times recorded in this trajectory CSV.
        #[arg(long)]
        times_from: Option<PathBuf>,
    },
    /// Run every bound check and write a report CSV.
    Bounds,
    /// Run the ε-sweep over N = 2000, 4000, 8000 into an output directory.
    Sweep,
    /// Compare two trajectory CSVs row by row.
    Diff {
        a: PathBuf,
        b: PathBuf,
        /// Fail when the largest |ΔDy| exceeds this value.
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

#[derive(Debug, Args, Default)]
pub struct CommonArgs {
    /// Number of atoms (even, at least 8).
    #[arg(long = "N", global = true)]
    pub n_sites: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa1: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kappa2: Option<f64>,
    /// Error model: I (Cauchy–Born), II (atomistic) or III (quasicontinuum).
    #[arg(long, global = true, value_parser = parse_model)]
    pub model: Option<ModelKind>,
    /// Time step as a fraction of the stability limit.
    #[arg(long, global = true)]
    pub dt_factor: Option<f64>,
    #[arg(long, global = true)]
    pub t_end: Option<f64>,
    /// Comma-separated sample times.
    #[arg(long, global = true, value_delimiter = ',')]
    pub sample_times: Option<Vec<f64>>,
    /// Output file (directory for `sweep`).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// `key = value` configuration file; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl CommonArgs {
    fn overrides(&self, command: Option<Command>) -> Overrides {
        Overrides {
            command,
            n_sites: self.n_sites,
            kappa1: self.kappa1,
            kappa2: self.kappa2,
            model: self.model,
            dt_factor: self.dt_factor,
            t_end: self.t_end,
            sample_times: self.sample_times.clone(),
            output: self.output.clone(),
        }
    }

    /// Merges flags, the output directory from the environment and the config file.
    pub fn resolve(&self, command: Option<Command>) -> Result<ExperimentConfig, CliError> {
        let file = match &self.config {
            Some(path) => read_config_file(path)?,
            None => Overrides::default(),
        };
        let env = std::env::var_os(OUTPUT_ENV).filter(|v| !v.is_empty()).map(PathBuf::from);
        ExperimentConfig::resolve(self.overrides(command), env, file)
    }
}
