//! Lattice configuration, per-site fields and the three spatial difference
//! operators (fully atomistic, Cauchy–Born, and the quasicontinuum coupling).
//!
//! Sites are numbered `n = 1..=N` with reference position `x_n = -1/2 + n·ε`
//! and the atomistic/continuum interface at `n = L = N/2` (`x = 0`). The
//! nonlocal (atomistic) region is `n < L`, the local (Cauchy–Born) region is
//! `n > L`. All index arithmetic is periodic with period `N`.

use crate::error::{Error, Result};

/// Lattice size and harmonic force constants.
///
/// `epsilon` and `L` are never stored; they are derived from `N` on demand so
/// that `epsilon * N == 1` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeConfig {
    n_sites: usize,
    kappa1: f64,
    kappa2: f64,
}

/// Morse-potential force constants used for the reference experiments.
pub const MORSE_KAPPA1: f64 = 4.4753;
pub const MORSE_KAPPA2: f64 = 0.4142;

impl LatticeConfig {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn kappa1(&self) -> f64 {
        self.kappa1
    }

    pub fn kappa2(&self) -> f64 {
        self.kappa2
    }

    /// Lattice spacing `1/N`.
    pub fn epsilon(&self) -> f64 {
        1.0 / self.n_sites as f64
    }

    /// Interface site index `L = N/2`.
    pub fn interface(&self) -> usize {
        self.n_sites / 2
    }

    /// Cauchy–Born modulus `κ1 + 4κ2`.
    pub fn modulus(&self) -> f64 {
        self.kappa1 + 4.0 * self.kappa2
    }

    /// Reference position `x_n = -1/2 + nε`, rounded once so that sites near the interface
    /// (`x ≈ 0`) carry only a tiny absolute error.
    pub fn position(&self, n: i64) -> f64 {
        let big_n = self.n_sites as i64;
        (2 * n - big_n) as f64 / (2 * big_n) as f64
    }

    /// Maps any integer site index onto the storage slot `0..N`.
    pub fn wrap(&self, n: i64) -> usize {
        (n - 1).rem_euclid(self.n_sites as i64) as usize
    }

    /// Level `-κ2/(κ1+4κ2)` about which the interface gradient settles.
    pub fn plateau(&self) -> f64 {
        -self.kappa2 / self.modulus()
    }

    /// `1/ε²`, exact for every admissible `N`.
    fn inv_eps_sq(&self) -> f64 {
        let n = self.n_sites as f64;
        n * n
    }
}

/// Validates and builds a [`LatticeConfig`].
pub fn build_config(n_sites: usize, kappa1: f64, kappa2: f64) -> Result<LatticeConfig> {
    if n_sites % 2 != 0 {
        return Err(Error::OddSiteCount(n_sites));
    }
    if n_sites < 8 {
        return Err(Error::TooFewSites(n_sites));
    }
    if !(kappa1 > 0.0) {
        return Err(Error::NonPositiveKappa1(kappa1));
    }
    let modulus = kappa1 + 4.0 * kappa2;
    if !(modulus > 0.0) {
        return Err(Error::UnstableContinuum(modulus));
    }
    Ok(LatticeConfig {
        n_sites,
        kappa1,
        kappa2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Displacement,
    Velocity,
    Force,
    Gradient,
}

/// Per-site real values, stored for `n = 1..=N` and read periodically.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    values: Vec<f64>,
    kind: FieldKind,
}

impl Field {
    pub fn zeros(config: &LatticeConfig, kind: FieldKind) -> Self {
        Field {
            values: vec![0.0; config.n_sites],
            kind,
        }
    }

    pub fn from_values(config: &LatticeConfig, kind: FieldKind, values: Vec<f64>) -> Result<Self> {
        if values.len() != config.n_sites {
            return Err(Error::LengthMismatch {
                expected: config.n_sites,
                found: values.len(),
            });
        }
        Ok(Field { values, kind })
    }

    /// Builds a field by evaluating `f(n)` for `n = 1..=N`.
    pub fn from_fn(config: &LatticeConfig, kind: FieldKind, f: impl FnMut(i64) -> f64) -> Self {
        Field {
            values: (1..=config.n_sites as i64).map(f).collect(),
            kind,
        }
    }

    /// The reference positions `x_n` viewed as a displacement.
    ///
    /// This field is not periodic: the deformation `x` jumps by one across
    /// the seam. Apply operators to it through [`apply_operator_affine`] with
    /// a period jump of `1`.
    pub fn identity(config: &LatticeConfig) -> Self {
        Field::from_fn(config, FieldKind::Displacement, |n| config.position(n))
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Periodic read at site `n` (any integer).
    pub fn at(&self, n: i64) -> f64 {
        let len = self.values.len() as i64;
        self.values[(n - 1).rem_euclid(len) as usize]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn dot(&self, other: &Field) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Atomistic,
    CauchyBorn,
    QC,
}

/// Stencil coefficient `a·κ1 + b·κ2`, kept symbolic until application.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coeff {
    pub k1: f64,
    pub k2: f64,
}

impl Coeff {
    const ZERO: Coeff = Coeff::new(0.0, 0.0);

    pub const fn new(k1: f64, k2: f64) -> Self {
        Coeff { k1, k2 }
    }

    pub fn eval(&self, config: &LatticeConfig) -> f64 {
        self.k1 * config.kappa1 + self.k2 * config.kappa2
    }
}

/// One row of a difference operator in units of `1/ε²`.
///
/// `neighbors` lists the off-diagonal entries by offset; `center` is the
/// diagonal entry as written for the interfacial rows. Every row sums to
/// zero, which lets [`apply_operator`] use the difference form
/// `Σ c_j (z(n+j) - z(n))` and return exact zeros on constant fields.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil {
    pub neighbors: [(i64, Coeff); 4],
    pub center: Coeff,
}

const ATOMISTIC: Stencil = Stencil {
    neighbors: [
        (-2, Coeff::new(0.0, 1.0)),
        (-1, Coeff::new(1.0, 0.0)),
        (1, Coeff::new(1.0, 0.0)),
        (2, Coeff::new(0.0, 1.0)),
    ],
    center: Coeff::new(-2.0, -2.0),
};

const CAUCHY_BORN: Stencil = Stencil {
    neighbors: [
        (-1, Coeff::new(1.0, 4.0)),
        (1, Coeff::new(1.0, 4.0)),
        (0, Coeff::ZERO),
        (0, Coeff::ZERO),
    ],
    center: Coeff::new(-2.0, -8.0),
};

// x = -ε
const QC_LEFT: Stencil = Stencil {
    neighbors: [
        (-2, Coeff::new(0.0, 1.0)),
        (-1, Coeff::new(1.0, 0.0)),
        (1, Coeff::new(1.0, 0.0)),
        (2, Coeff::new(0.0, 0.5)),
    ],
    center: Coeff::new(-2.0, -1.5),
};

// x = 0
const QC_INTERFACE: Stencil = Stencil {
    neighbors: [
        (-2, Coeff::new(0.0, 1.0)),
        (-1, Coeff::new(1.0, 0.0)),
        (1, Coeff::new(1.0, 4.0)),
        (0, Coeff::ZERO),
    ],
    center: Coeff::new(-2.0, -5.0),
};

// x = ε
const QC_RIGHT: Stencil = Stencil {
    neighbors: [
        (-2, Coeff::new(0.0, 0.5)),
        (-1, Coeff::new(1.0, 4.0)),
        (1, Coeff::new(1.0, 4.0)),
        (0, Coeff::ZERO),
    ],
    center: Coeff::new(-2.0, -8.5),
};

/// Stencil used by operator `kind` at site `n` (`1..=N`).
pub fn stencil_row(config: &LatticeConfig, kind: OperatorKind, n: i64) -> Stencil {
    match kind {
        OperatorKind::Atomistic => ATOMISTIC,
        OperatorKind::CauchyBorn => CAUCHY_BORN,
        OperatorKind::QC => {
            let l = config.interface() as i64;
            let n = config.wrap(n) as i64 + 1;
            match n - l {
                d if d <= -2 => ATOMISTIC,
                -1 => QC_LEFT,
                0 => QC_INTERFACE,
                1 => QC_RIGHT,
                _ => CAUCHY_BORN,
            }
        }
    }
}

/// Applies the operator to a periodic displacement field, returning forces.
pub fn apply_operator(config: &LatticeConfig, kind: OperatorKind, field: &Field) -> Result<Field> {
    apply_operator_affine(config, kind, field, 0.0)
}

/// Applies the operator to a field whose periodic extension carries an
/// additive jump: `z(n + jN) = z(n) + j·period_jump`.
///
/// A jump of `0` is the ordinary periodic case; a jump of `1` is the
/// extension of the reference deformation `x ↦ x`.
pub fn apply_operator_affine(
    config: &LatticeConfig,
    kind: OperatorKind,
    field: &Field,
    period_jump: f64,
) -> Result<Field> {
    check_displacement(config, field)?;
    let n_sites = config.n_sites as i64;
    let scale = config.inv_eps_sq();
    let values = field.values();
    let read = |m: i64| -> f64 {
        let idx = m - 1;
        let wraps = idx.div_euclid(n_sites);
        let base = values[idx.rem_euclid(n_sites) as usize];
        if wraps == 0 {
            base
        } else {
            base + wraps as f64 * period_jump
        }
    };

    let coeffs = |s: &Stencil| s.neighbors.map(|(off, c)| (off, c.eval(config)));
    let atomistic = coeffs(&ATOMISTIC);
    let cauchy_born = coeffs(&CAUCHY_BORN);
    let interfacial = [
        coeffs(&QC_LEFT),
        coeffs(&QC_INTERFACE),
        coeffs(&QC_RIGHT),
    ];
    let l = config.interface() as i64;

    let out = (1..=n_sites)
        .map(|n| {
            let row = match kind {
                OperatorKind::Atomistic => &atomistic,
                OperatorKind::CauchyBorn => &cauchy_born,
                OperatorKind::QC => match n - l {
                    d if d <= -2 => &atomistic,
                    d @ -1..=1 => &interfacial[(d + 1) as usize],
                    _ => &cauchy_born,
                },
            };
            let acc: f64 = if n > 2 && n <= n_sites - 2 {
                let i = (n - 1) as usize;
                let center = values[i];
                row.iter()
                    .filter(|(_, c)| *c != 0.0)
                    .map(|&(off, c)| c * (values[(i as i64 + off) as usize] - center))
                    .sum()
            } else {
                let center = read(n);
                row.iter()
                    .filter(|(_, c)| *c != 0.0)
                    .map(|&(off, c)| c * (read(n + off) - center))
                    .sum()
            };
            acc * scale
        })
        .collect();
    Ok(Field {
        values: out,
        kind: FieldKind::Force,
    })
}

/// Ghost force: `2κ2/ε` at `L`, `-κ2/ε` at `L ± 1`, zero elsewhere.
pub fn ghost_force(config: &LatticeConfig) -> Field {
    let mut f = Field::zeros(config, FieldKind::Force);
    let l = config.interface() as i64;
    let scale = config.kappa2 * config.n_sites as f64;
    f.values[config.wrap(l)] = 2.0 * scale;
    f.values[config.wrap(l - 1)] = -scale;
    f.values[config.wrap(l + 1)] = -scale;
    f
}

/// Gershgorin bound `max_n Σ_j |c_j| / ε²` on the spectral radius of the operator.
pub fn spectral_radius_bound(config: &LatticeConfig, kind: OperatorKind) -> f64 {
    let rows: &[Stencil] = match kind {
        OperatorKind::Atomistic => &[ATOMISTIC],
        OperatorKind::CauchyBorn => &[CAUCHY_BORN],
        OperatorKind::QC => &[ATOMISTIC, QC_LEFT, QC_INTERFACE, QC_RIGHT, CAUCHY_BORN],
    };
    rows.iter()
        .map(|s| {
            s.center.eval(config).abs()
                + s.neighbors
                    .iter()
                    .map(|(_, c)| c.eval(config).abs())
                    .sum::<f64>()
        })
        .fold(0.0, f64::max)
        * config.inv_eps_sq()
}

fn check_displacement(config: &LatticeConfig, field: &Field) -> Result<()> {
    if field.len() != config.n_sites {
        return Err(Error::LengthMismatch {
            expected: config.n_sites,
            found: field.len(),
        });
    }
    if field.kind != FieldKind::Displacement {
        return Err(Error::WrongFieldKind {
            expected: FieldKind::Displacement,
            found: field.kind,
        });
    }
    Ok(())
}
