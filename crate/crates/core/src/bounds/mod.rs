//! Numerical verification of the error estimates.
//!
//! Every check produces a [`BoundReport`] comparing a computed quantity with
//! an explicit (or calibrated) bound. Nothing here proves anything; the
//! point is to exercise each estimate against an independent evaluation.

mod checks;
mod expsum;
mod lemmas;
mod report;
mod scaling;
mod series;

pub use checks::{
    euler_maclaurin_check, interface_sign, long_time_check, long_time_envelope, short_time_bulk_envelope,
    short_time_check, EnvelopeConstants, CALIBRATION_HEADROOM, CALIBRATION_SITES, SHORT_TIME_LIMIT,
};
pub use expsum::{
    brute_exponential_sum, half_range_sum, oscillatory_integral, poisson_checks, remainder_bound,
    truncated_poisson_decompose, Amplitude, ExpSumSpec, PhaseSign, PoissonDecomposition,
};
pub use lemmas::{interior_aggregate_check, lemma_bound, lemma_case, lemma_sweep, LemmaCase};
pub use report::{all_passed, BoundReport};
pub use scaling::{peak_oscillation_amplitude, scaling_fit};
pub use series::{
    double_factorial_series, mean_integral, short_time_series, SeriesMethod, ShortTimeSeries,
    SERIES_SWITCH,
};
