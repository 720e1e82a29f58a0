//! Velocity-Verlet integration of the forced lattice error equation
//! `ÿ = A y + f` with homogeneous initial data.
//!
//! Three error models share the ghost-force forcing `f` and differ in the
//! operator `A`: Model I uses Cauchy–Born everywhere, Model II the atomistic
//! operator everywhere, Model III the quasicontinuum operator.

use crate::error::{Error, Result};
use crate::lattice::{apply_operator, ghost_force, spectral_radius_bound, Field, FieldKind, LatticeConfig, OperatorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    I,
    II,
    III,
}

impl ModelKind {
    pub fn operator(self) -> OperatorKind {
        match self {
            ModelKind::I => OperatorKind::CauchyBorn,
            ModelKind::II => OperatorKind::Atomistic,
            ModelKind::III => OperatorKind::QC,
        }
    }
}

/// Operator plus time-independent forcing.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    operator: OperatorKind,
    forcing: Field,
}

impl ModelSpec {
    /// One of the three ghost-force error models.
    pub fn for_model(config: &LatticeConfig, model: ModelKind) -> Self {
        ModelSpec {
            operator: model.operator(),
            forcing: ghost_force(config),
        }
    }

    /// Arbitrary operator/forcing pair.
    pub fn new(config: &LatticeConfig, operator: OperatorKind, forcing: Field) -> Result<Self> {
        if forcing.len() != config.n_sites() {
            return Err(Error::LengthMismatch {
                expected: config.n_sites(),
                found: forcing.len(),
            });
        }
        if forcing.kind() != FieldKind::Force {
            return Err(Error::WrongFieldKind {
                expected: FieldKind::Force,
                found: forcing.kind(),
            });
        }
        Ok(ModelSpec { operator, forcing })
    }

    pub fn operator(&self) -> OperatorKind {
        self.operator
    }

    pub fn forcing(&self) -> &Field {
        &self.forcing
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationState {
    pub t: f64,
    pub y: Field,
    pub v: Field,
}

impl SimulationState {
    /// Zero displacement and velocity at `t = 0`.
    pub fn initial(config: &LatticeConfig) -> Self {
        SimulationState {
            t: 0.0,
            y: Field::zeros(config, FieldKind::Displacement),
            v: Field::zeros(config, FieldKind::Velocity),
        }
    }
}

/// Linear stability limit `2/ω_max` of velocity Verlet for `operator`, with
/// `ω_max²` taken from the Gershgorin bound of the stencil. For Cauchy–Born
/// this is exactly `ε/√(κ1+4κ2)`.
pub fn dt_max(config: &LatticeConfig, operator: OperatorKind) -> f64 {
    2.0 / spectral_radius_bound(config, operator).sqrt()
}

/// `dt_max / 10`.
pub fn default_dt(config: &LatticeConfig, operator: OperatorKind) -> f64 {
    dt_max(config, operator) / 10.0
}

fn check_dt(config: &LatticeConfig, operator: OperatorKind, dt: f64) -> Result<()> {
    let limit = dt_max(config, operator);
    if dt == 0.0 || !dt.is_finite() || dt.abs() > limit * (1.0 + 1e-12) {
        return Err(Error::TimeStepOutOfRange { dt, dt_max: limit });
    }
    Ok(())
}

fn acceleration(config: &LatticeConfig, model: &ModelSpec, y: &Field) -> Result<Field> {
    let mut a = apply_operator(config, model.operator, y)?;
    for (ai, fi) in a.values_mut().iter_mut().zip(model.forcing.values()) {
        *ai += fi;
    }
    Ok(a)
}

/// One velocity-Verlet step. Negative `dt` integrates backwards in time.
pub fn verlet_step(config: &LatticeConfig, model: &ModelSpec, state: &SimulationState, dt: f64) -> Result<SimulationState> {
    check_dt(config, model.operator, dt)?;
    let a0 = acceleration(config, model, &state.y)?;
    let mut next = state.clone();
    kick_drift(&mut next, &a0, dt);
    let a1 = acceleration(config, model, &next.y)?;
    kick(&mut next.v, &a1, dt);
    next.t = state.t + dt;
    Ok(next)
}

fn kick_drift(state: &mut SimulationState, a: &Field, dt: f64) {
    let half = 0.5 * dt;
    for ((y, v), a) in state
        .y
        .values_mut()
        .iter_mut()
        .zip(state.v.values_mut().iter_mut())
        .zip(a.values())
    {
        *v += half * a;
        *y += dt * *v;
    }
}

fn kick(v: &mut Field, a: &Field, dt: f64) {
    let half = 0.5 * dt;
    for (v, a) in v.values_mut().iter_mut().zip(a.values()) {
        *v += half * a;
    }
}

/// Stateful integrator that carries the acceleration between steps.
///
/// Produces bit-identical states to repeated [`verlet_step`] calls while
/// evaluating the operator once per step.
#[derive(Debug, Clone)]
pub struct VerletIntegrator<'a> {
    config: &'a LatticeConfig,
    model: &'a ModelSpec,
    dt: f64,
    t0: f64,
    steps: u64,
    state: SimulationState,
    accel: Field,
}

impl<'a> VerletIntegrator<'a> {
    pub fn new(config: &'a LatticeConfig, model: &'a ModelSpec, dt: f64) -> Result<Self> {
        Self::from_state(config, model, SimulationState::initial(config), dt)
    }

    pub fn from_state(config: &'a LatticeConfig, model: &'a ModelSpec, state: SimulationState, dt: f64) -> Result<Self> {
        check_dt(config, model.operator, dt)?;
        let accel = acceleration(config, model, &state.y)?;
        Ok(VerletIntegrator {
            config,
            model,
            dt,
            t0: state.t,
            steps: 0,
            state,
            accel,
        })
    }

    pub fn advance(&mut self) -> Result<()> {
        kick_drift(&mut self.state, &self.accel, self.dt);
        self.accel = acceleration(self.config, self.model, &self.state.y)?;
        kick(&mut self.state.v, &self.accel, self.dt);
        self.steps += 1;
        // t0 + k·dt rather than accumulated increments
        self.state.t = self.t0 + self.steps as f64 * self.dt;
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn time(&self) -> f64 {
        self.state.t
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn state(&self) -> &SimulationState {
        &self.state
    }

    pub fn into_state(self) -> SimulationState {
        self.state
    }
}

/// Recorded snapshot; `t` is the actual step time.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub step: u64,
    pub y: Field,
    pub dy: Field,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub config: LatticeConfig,
    pub model: ModelSpec,
    pub dt: f64,
    pub samples: Vec<Sample>,
}

/// Integrates from the homogeneous initial state up to the step nearest
/// `t_end`, recording the completed step nearest each requested time.
///
/// Requested times that land on the same step are recorded once. With no
/// requested times the final state is recorded.
pub fn run_simulation(
    config: &LatticeConfig,
    model: &ModelSpec,
    dt: f64,
    t_end: f64,
    sample_times: &[f64],
) -> Result<Trajectory> {
    let mut integrator = VerletIntegrator::new(config, model, dt)?;
    if !(t_end >= 0.0) {
        return Err(Error::NegativeTime(t_end));
    }
    let total = (t_end / dt).round() as u64;
    let mut targets: Vec<u64> = if sample_times.is_empty() {
        vec![total]
    } else {
        sample_times
            .iter()
            .map(|&s| {
                if !(0.0..=t_end).contains(&s) {
                    return Err(Error::SampleTimeOutOfRange { t: s, t_end });
                }
                Ok(((s / dt).round() as u64).min(total))
            })
            .collect::<Result<_>>()?
    };
    targets.sort_unstable();
    targets.dedup();

    let mut samples = Vec::with_capacity(targets.len());
    let mut record = |integ: &VerletIntegrator| -> Result<()> {
        let state = integ.state();
        samples.push(Sample {
            t: state.t,
            step: integ.steps(),
            y: state.y.clone(),
            dy: discrete_gradient(config, &state.y)?,
        });
        Ok(())
    };
    let mut next = targets.iter().peekable();
    while let Some(&&target) = next.peek() {
        if integrator.steps() == target {
            record(&integrator)?;
            next.next();
        } else {
            integrator.advance()?;
        }
    }
    Ok(Trajectory {
        config: *config,
        model: model.clone(),
        dt,
        samples,
    })
}

/// Forward difference `(y(n+1) - y(n))/ε`, periodic at `n = N`.
///
/// For the non-periodic reference deformation `x_n` the wrap entry at `n = N`
/// is `1 - N` rather than `1`.
pub fn discrete_gradient(config: &LatticeConfig, y: &Field) -> Result<Field> {
    if y.len() != config.n_sites() {
        return Err(Error::LengthMismatch {
            expected: config.n_sites(),
            found: y.len(),
        });
    }
    if y.kind() != FieldKind::Displacement {
        return Err(Error::WrongFieldKind {
            expected: FieldKind::Displacement,
            found: y.kind(),
        });
    }
    let inv_eps = config.n_sites() as f64;
    let vals = y.values();
    let n = vals.len();
    let grad = (0..n).map(|i| (vals[(i + 1) % n] - vals[i]) * inv_eps).collect();
    Field::from_values(config, FieldKind::Gradient, grad)
}

/// `½Σv² - ½⟨y, A y⟩ - ⟨f, y⟩`; conserved by the exact flow when `A` is symmetric.
pub fn total_energy(config: &LatticeConfig, model: &ModelSpec, state: &SimulationState) -> Result<f64> {
    let ay = apply_operator(config, model.operator, &state.y)?;
    let kinetic = 0.5 * state.v.dot(&state.v);
    let potential = -0.5 * state.y.dot(&ay);
    Ok(kinetic + potential - model.forcing.dot(&state.y))
}
