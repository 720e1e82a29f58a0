//! Experiment configuration: defaults, `key = value` files, environment and flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qcghost::dynamics::ModelKind;
use qcghost::lattice::{MORSE_KAPPA1, MORSE_KAPPA2};
use qcghost::{build_config, LatticeConfig};

use crate::error::CliError;

pub const OUTPUT_ENV: &str = "QCGHOST_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Command {
    #[default]
    Simulate,
    Spectral,
    Bounds,
    Sweep,
}

impl Command {
    fn default_output(self) -> &'static str {
        match self {
            Command::Simulate => "trajectory.csv",
            Command::Spectral => "spectral.csv",
            Command::Bounds => "bounds.csv",
            Command::Sweep => "sweep",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Command::Simulate => "simulate",
            Command::Spectral => "spectral",
            Command::Bounds => "bounds",
            Command::Sweep => "sweep",
        })
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simulate" => Ok(Command::Simulate),
            "spectral" => Ok(Command::Spectral),
            "bounds" => Ok(Command::Bounds),
            "sweep" => Ok(Command::Sweep),
            _ => Err(format!("unknown command '{s}' (expected simulate, spectral, bounds or sweep)")),
        }
    }
}

pub fn parse_model(s: &str) -> Result<ModelKind, String> {
    match s {
        "I" | "1" => Ok(ModelKind::I),
        "II" | "2" => Ok(ModelKind::II),
        "III" | "3" => Ok(ModelKind::III),
        _ => Err(format!("unknown model '{s}' (expected I, II or III)")),
    }
}

fn model_name(m: ModelKind) -> &'static str {
    match m {
        ModelKind::I => "I",
        ModelKind::II => "II",
        ModelKind::III => "III",
    }
}

pub fn parse_times(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>().map_err(|_| format!("'{p}' is not a number")))
        .collect()
}

/// Settings that may come from any layer; `None` means "not given here".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub command: Option<Command>,
    pub n_sites: Option<usize>,
    pub kappa1: Option<f64>,
    pub kappa2: Option<f64>,
    pub model: Option<ModelKind>,
    pub dt_factor: Option<f64>,
    pub t_end: Option<f64>,
    pub sample_times: Option<Vec<f64>>,
    pub output: Option<PathBuf>,
}

impl Overrides {
    /// Fields set in `self` win over those in `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            command: self.command.or(lower.command),
            n_sites: self.n_sites.or(lower.n_sites),
            kappa1: self.kappa1.or(lower.kappa1),
            kappa2: self.kappa2.or(lower.kappa2),
            model: self.model.or(lower.model),
            dt_factor: self.dt_factor.or(lower.dt_factor),
            t_end: self.t_end.or(lower.t_end),
            sample_times: self.sample_times.or(lower.sample_times),
            output: self.output.or(lower.output),
        }
    }
}

/// Parses flat `key = value` text; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Overrides, CliError> {
    let mut out = Overrides::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| CliError::Syntax {
            line: line_no,
            message: format!("expected 'key = value', found '{line}'"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |message: String| CliError::Syntax { line: line_no, message };
        let real = |v: &str| v.parse::<f64>().map_err(|_| bad(format!("{key}: '{v}' is not a number")));
        match key {
            "command" => out.command = Some(value.parse().map_err(bad)?),
            "N" | "n_sites" => {
                out.n_sites = Some(value.parse().map_err(|_| bad(format!("N: '{value}' is not a positive integer")))?)
            }
            "kappa1" => out.kappa1 = Some(real(value)?),
            "kappa2" => out.kappa2 = Some(real(value)?),
            "model" => out.model = Some(parse_model(value).map_err(bad)?),
            "dt_factor" => out.dt_factor = Some(real(value)?),
            "t_end" => out.t_end = Some(real(value)?),
            "sample_times" => out.sample_times = Some(parse_times(value).map_err(bad)?),
            "output" => out.output = Some(PathBuf::from(value)),
            _ => {
                return Err(CliError::UnknownKey {
                    key: key.to_string(),
                    line: line_no,
                })
            }
        }
    }
    Ok(out)
}

pub fn read_config_file(path: &Path) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_text(&text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub command: Command,
    pub lattice: LatticeConfig,
    pub model: ModelKind,
    pub dt_factor: f64,
    pub t_end: f64,
    pub sample_times: Vec<f64>,
    pub output: PathBuf,
}

impl ExperimentConfig {
    /// Fills unset fields with defaults and validates the result.
    ///
    /// `env_output` is the output directory from the environment; it only
    /// applies when the output is not set explicitly by a higher layer.
    pub fn resolve(flags: Overrides, env_output: Option<PathBuf>, file: Overrides) -> Result<Self, CliError> {
        let command = flags.command.or(file.command).unwrap_or_default();
        let output = match (flags.output.clone(), env_output, file.output.clone()) {
            (Some(p), _, _) => p,
            (None, Some(dir), _) => dir.join(command.default_output()),
            (None, None, Some(p)) => p,
            (None, None, None) => PathBuf::from(command.default_output()),
        };
        let merged = flags.over(file);

        let n_sites = merged.n_sites.unwrap_or(2000);
        let lattice = build_config(
            n_sites,
            merged.kappa1.unwrap_or(MORSE_KAPPA1),
            merged.kappa2.unwrap_or(MORSE_KAPPA2),
        )
        .map_err(|e| CliError::Invalid(format!("{e}")))?;

        let dt_factor = merged.dt_factor.unwrap_or(0.1);
        if !(dt_factor > 0.0 && dt_factor <= 1.0) {
            return Err(CliError::Invalid(format!(
                "dt_factor = {dt_factor} must lie in (0, 1]; it is the fraction of the stable step dt_max"
            )));
        }
        let t_end = merged.t_end.unwrap_or(1.0);
        if !(t_end >= 0.0 && t_end.is_finite()) {
            return Err(CliError::Invalid(format!("t_end = {t_end} must be a finite non-negative time")));
        }
        let mut sample_times = merged.sample_times.unwrap_or_else(|| vec![0.01, 0.05, 0.2, 1.0]);
        if let Some(&bad) = sample_times.iter().find(|&&t| !(0.0..=t_end).contains(&t)) {
            return Err(CliError::Invalid(format!(
                "sample time {bad} lies outside [0, t_end = {t_end}]; raise --t-end or drop the sample"
            )));
        }
        sample_times.sort_by(f64::total_cmp);
        sample_times.dedup();

        Ok(ExperimentConfig {
            command,
            lattice,
            model: merged.model.unwrap_or(ModelKind::III),
            dt_factor,
            t_end,
            sample_times,
            output,
        })
    }

    /// `key = value` lines echoed at the top of every output file.
    pub fn echo(&self) -> Vec<String> {
        let times: Vec<String> = self.sample_times.iter().map(|t| t.to_string()).collect();
        vec![
            format!("command = {}", self.command),
            format!("N = {}", self.lattice.n_sites()),
            format!("kappa1 = {}", self.lattice.kappa1()),
            format!("kappa2 = {}", self.lattice.kappa2()),
            format!("model = {}", model_name(self.model)),
            format!("dt_factor = {}", self.dt_factor),
            format!("t_end = {}", self.t_end),
            format!("sample_times = {}", times.join(",")),
        ]
    }
}
