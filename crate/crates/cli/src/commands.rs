use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use qcghost::bounds::{
    euler_maclaurin_check, interior_aggregate_check, lemma_sweep, long_time_check, poisson_checks, scaling_fit,
    short_time_check, Amplitude, BoundReport, EnvelopeConstants, ExpSumSpec, PhaseSign,
};
use qcghost::dynamics::{discrete_gradient, dt_max, run_simulation, ModelSpec, VerletIntegrator};
use qcghost::quadrature::QuadratureSettings;
use qcghost::spectral::{SpectralSolution, TimeScaleParams};
use qcghost::{build_config, LatticeConfig};

use crate::config::{Command, ExperimentConfig};
use crate::error::CliError;
use crate::output::{read_trajectory, CsvWriter, Row, REPORT_HEADER, TRAJECTORY_HEADER};

/// Lattice sizes of the ε-sweep.
pub const SWEEP_SITES: [usize; 3] = [2000, 4000, 8000];

#[derive(Debug, Default)]
pub struct RunOutcome {
    pub files: Vec<PathBuf>,
    pub reports: Vec<BoundReport>,
    pub messages: Vec<String>,
}

impl RunOutcome {
    pub fn failed_reports(&self) -> usize {
        self.reports.iter().filter(|r| !r.passed).count()
    }
}

/// Extra inputs that only some commands use.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Evaluate `spectral` at the distinct times found in this trajectory CSV.
    pub times_from: Option<PathBuf>,
}

pub fn run_command(config: &ExperimentConfig, options: &RunOptions) -> Result<RunOutcome, CliError> {
    match config.command {
        Command::Simulate => simulate(config),
        Command::Spectral => spectral(config, options),
        Command::Bounds => bounds(config),
        Command::Sweep => sweep(config),
    }
}

fn time_step(lattice: &LatticeConfig, config: &ExperimentConfig) -> f64 {
    config.dt_factor * dt_max(lattice, config.model.operator())
}

fn simulate(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let lattice = &config.lattice;
    let model = ModelSpec::for_model(lattice, config.model);
    let dt = time_step(lattice, config);
    let traj = run_simulation(lattice, &model, dt, config.t_end, &config.sample_times)?;

    let mut echo = config.echo();
    echo.push(format!("dt = {dt:.16e}"));
    let mut w = CsvWriter::create(&config.output, &echo, TRAJECTORY_HEADER)?;
    for s in &traj.samples {
        for n in 1..=lattice.n_sites() as i64 {
            w.row(&Row {
                t: s.t,
                n,
                x: lattice.position(n),
                y: s.y.at(n),
                dy: s.dy.at(n),
            })?;
        }
    }
    w.finish()?;
    Ok(RunOutcome {
        files: vec![config.output.clone()],
        messages: vec![format!(
            "simulated model {:?} with dt = {dt:.6e} ({} samples)",
            config.model,
            traj.samples.len()
        )],
        ..Default::default()
    })
}

fn distinct_times(path: &Path) -> Result<Vec<f64>, CliError> {
    let mut times: Vec<f64> = read_trajectory(path)?.iter().map(|r| r.t).collect();
    times.dedup();
    Ok(times)
}

fn spectral(config: &ExperimentConfig, options: &RunOptions) -> Result<RunOutcome, CliError> {
    let lattice = &config.lattice;
    let sol = SpectralSolution::new(lattice);
    let times = match &options.times_from {
        Some(path) => distinct_times(path)?,
        None => config.sample_times.clone(),
    };
    let mut w = CsvWriter::create(&config.output, &config.echo(), TRAJECTORY_HEADER)?;
    for &t in &times {
        let y = sol.displacement_field(t)?;
        let dy = sol.gradient_field(t)?;
        for n in 1..=lattice.n_sites() as i64 {
            w.row(&Row {
                t,
                n,
                x: lattice.position(n),
                y: y.at(n),
                dy: dy.at(n),
            })?;
        }
    }
    w.finish()?;
    Ok(RunOutcome {
        files: vec![config.output.clone()],
        messages: vec![format!("closed form evaluated at {} times", times.len())],
        ..Default::default()
    })
}

/// Every bound check for the configured lattice.
pub fn collect_reports(config: &ExperimentConfig) -> Result<Vec<BoundReport>, CliError> {
    let lattice = &config.lattice;
    let sol = SpectralSolution::new(lattice);
    let settings = QuadratureSettings::default();
    let constants = EnvelopeConstants::calibrate(lattice.kappa1(), lattice.kappa2())?;
    let eps = lattice.epsilon();
    let l = lattice.interface() as i64;
    let mut reports = Vec::new();

    for f in [0.0, 1.0, 5.0] {
        reports.push(euler_maclaurin_check(lattice, f * eps, &settings)?);
    }
    for f in [0.5, 1.0, 2.0, 5.0] {
        for n in [l, l - 1] {
            reports.push(short_time_check(&sol, &constants, f * eps, n)?);
        }
        for d in [1, 2, 5, 10, 50] {
            for n in [l + d, l - 1 - d] {
                reports.push(short_time_check(&sol, &constants, f * eps, n)?);
            }
        }
    }

    let mut long_times: Vec<f64> = config.sample_times.iter().copied().chain([config.t_end]).collect();
    long_times.sort_by(f64::total_cmp);
    long_times.dedup();
    long_times.retain(|&t| {
        let g = TimeScaleParams::new(lattice, t, l).gamma;
        g >= 1.0 && g <= lattice.n_sites() as f64
    });
    let n_sites = lattice.n_sites();
    for &t in &long_times {
        for n in [l, l - 1, l + 1, l - 2, l + 10, l - 11, 1] {
            reports.push(long_time_check(&sol, &constants, t, n)?);
        }
        let gamma = TimeScaleParams::new(lattice, t, l).gamma;
        let rho = TimeScaleParams::new(lattice, t, l + 1).rho;
        let specs = [
            ExpSumSpec::new(n_sites, gamma, 0.0, PhaseSign::Plus, Amplitude::SinSq)?,
            ExpSumSpec::new(n_sites, gamma, rho, PhaseSign::Plus, Amplitude::Sin)?,
            ExpSumSpec::new(n_sites, gamma, rho, PhaseSign::Minus, Amplitude::Sin)?,
        ];
        for spec in &specs {
            reports.extend(poisson_checks(spec, 0.5, &settings)?);
            reports.extend(lemma_sweep(spec, &settings)?);
        }
        reports.push(interior_aggregate_check(&specs[1])?);
    }
    Ok(reports)
}

fn bounds(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let reports = collect_reports(config)?;
    let mut w = CsvWriter::create(&config.output, &config.echo(), REPORT_HEADER)?;
    for r in &reports {
        w.report(r)?;
    }
    w.finish()?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    Ok(RunOutcome {
        files: vec![config.output.clone()],
        messages: vec![format!("{} checks, {} failed", reports.len(), failed)],
        reports,
    })
}

struct MemberResult {
    n_sites: usize,
    path: PathBuf,
    mean: f64,
    amplitude: f64,
}

/// Streams interface-site histories of one sweep member to CSV and returns
/// the mean and peak deviation of `Dy(L)` over `[t_end/2, t_end]`.
fn sweep_member(config: &ExperimentConfig, n_sites: usize, dir: &Path) -> Result<MemberResult, CliError> {
    let lattice = build_config(n_sites, config.lattice.kappa1(), config.lattice.kappa2())?;
    let model = ModelSpec::for_model(&lattice, config.model);
    let dt = time_step(&lattice, config);
    let total = (config.t_end / dt).round() as u64;
    let period = PI / (n_sites as f64 * lattice.modulus().sqrt());
    let stride = ((period / 8.0) / dt).floor().max(1.0) as u64;
    let l = lattice.interface() as i64;
    let sites: Vec<i64> = (l - 3..=l + 2).collect();

    let path = dir.join(format!("sweep_N{n_sites}.csv"));
    let mut echo = config.echo();
    echo[1] = format!("N = {n_sites}");
    echo.push(format!("dt = {dt:.16e}"));
    echo.push(format!("stride = {stride}"));
    let mut w = CsvWriter::create(&path, &echo, TRAJECTORY_HEADER)?;

    let mut integ = VerletIntegrator::new(&lattice, &model, dt)?;
    let window_start = 0.5 * config.t_end;
    let mut window = Vec::new();
    loop {
        let step = integ.steps();
        if step % stride == 0 || step == total {
            let state = integ.state();
            let dy = discrete_gradient(&lattice, &state.y)?;
            for &n in &sites {
                w.row(&Row {
                    t: state.t,
                    n,
                    x: lattice.position(n),
                    y: state.y.at(n),
                    dy: dy.at(n),
                })?;
            }
            if state.t >= window_start {
                window.push(dy.at(l));
            }
        }
        if step >= total {
            break;
        }
        integ.advance()?;
    }
    w.finish()?;
    let mean = window.iter().sum::<f64>() / window.len().max(1) as f64;
    let amplitude = window.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max);
    Ok(MemberResult {
        n_sites,
        path,
        mean,
        amplitude,
    })
}

fn sweep(config: &ExperimentConfig) -> Result<RunOutcome, CliError> {
    let dir = config.output.clone();
    std::fs::create_dir_all(&dir).map_err(|source| CliError::Io {
        path: dir.clone(),
        source,
    })?;
    let results: Vec<Result<MemberResult, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = SWEEP_SITES
            .iter()
            .map(|&n| {
                let dir = &dir;
                scope.spawn(move || sweep_member(config, n, dir))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep member panicked")).collect()
    });
    let members: Vec<MemberResult> = results.into_iter().collect::<Result<_, _>>()?;

    let points: Vec<(f64, f64)> = members.iter().map(|m| (1.0 / m.n_sites as f64, m.amplitude)).collect();
    let slope = scaling_fit(&points)?;
    let summary = dir.join("summary.csv");
    let mut echo = config.echo();
    echo.push(format!("fitted_slope = {slope:.16e}"));
    let mut w = CsvWriter::create(&summary, &echo, "epsilon,N,mean_Dy_L,peak_amplitude")?;
    for m in &members {
        w.line(&format!(
            "{},{},{},{}",
            crate::output::float(1.0 / m.n_sites as f64),
            m.n_sites,
            crate::output::float(m.mean),
            crate::output::float(m.amplitude)
        ))?;
    }
    w.finish()?;

    let mut files: Vec<PathBuf> = members.iter().map(|m| m.path.clone()).collect();
    files.push(summary);
    Ok(RunOutcome {
        files,
        messages: vec![format!("amplitude exponent vs epsilon: {slope:.4}")],
        ..Default::default()
    })
}

/// Row-by-row comparison of two trajectory files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffSummary {
    pub rows: usize,
    pub max_time_offset: f64,
    pub max_y: f64,
    pub max_dy: f64,
}

pub fn diff_files(a: &Path, b: &Path) -> Result<DiffSummary, CliError> {
    let ra = read_trajectory(a)?;
    let rb = read_trajectory(b)?;
    if ra.len() != rb.len() {
        return Err(CliError::Csv {
            path: b.to_path_buf(),
            message: format!("{} rows, but {} has {}", rb.len(), a.display(), ra.len()),
        });
    }
    let mut out = DiffSummary {
        rows: ra.len(),
        max_time_offset: 0.0,
        max_y: 0.0,
        max_dy: 0.0,
    };
    for (i, (p, q)) in ra.iter().zip(&rb).enumerate() {
        if p.n != q.n {
            return Err(CliError::Csv {
                path: b.to_path_buf(),
                message: format!("row {}: site {} does not match site {}", i + 1, q.n, p.n),
            });
        }
        out.max_time_offset = out.max_time_offset.max((p.t - q.t).abs());
        out.max_y = out.max_y.max((p.y - q.y).abs());
        out.max_dy = out.max_dy.max((p.dy - q.dy).abs());
    }
    Ok(out)
}
