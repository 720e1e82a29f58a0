use thiserror::Error;

use crate::lattice::FieldKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("site count N={0} is odd; the lattice requires an even number of atoms")]
    OddSiteCount(usize),

    #[error("site count N={0} is too small; at least 8 atoms are required")]
    TooFewSites(usize),

    #[error("kappa1 = {0} must be positive")]
    NonPositiveKappa1(f64),

    #[error("kappa1 + 4*kappa2 = {0} must be positive for a stable continuum")]
    UnstableContinuum(f64),

    #[error("field length {found} does not match lattice size {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("expected a {expected:?} field, got {found:?}")]
    WrongFieldKind { expected: FieldKind, found: FieldKind },

    #[error("time step {dt} outside the stability range 0 < |dt| <= {dt_max}")]
    TimeStepOutOfRange { dt: f64, dt_max: f64 },

    #[error("sample time {t} outside [0, {t_end}]")]
    SampleTimeOutOfRange { t: f64, t_end: f64 },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("mode index {k} outside 0..={n_sites}")]
    ModeOutOfRange { k: usize, n_sites: usize },

    #[error("site index {n} outside 1..={n_sites}")]
    SiteOutOfRange { n: i64, n_sites: usize },

    #[error("truncation parameter delta = {0} must lie in (0, 1)")]
    DeltaOutOfRange(f64),

    #[error("quadrature did not converge: error estimate {estimate:e} after {evaluations} evaluations")]
    QuadratureNonConvergence { estimate: f64, evaluations: usize },

    #[error("no lemma covers frequency nu = {nu} for this sum: {reason}")]
    NoApplicableLemma { nu: i64, reason: &'static str },

    #[error("gamma = {gamma} outside the long-time range [1, {n_sites}]")]
    GammaOutOfRange { gamma: f64, n_sites: usize },

    #[error("t = {t} is outside the short-time regime t <= {limit}")]
    NotShortTime { t: f64, limit: f64 },

    #[error("degenerate sweep: {0}")]
    DegenerateSweep(&'static str),

    #[error("series argument {0} must be non-negative")]
    NegativeArgument(f64),
}
