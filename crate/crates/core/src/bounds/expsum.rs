//! Exponential sums `Σ φ(k) e(f(k))` with `e(z) = exp(2πiz)` and their
//! truncated-Poisson reduction to a short sum of oscillatory integrals.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::report::BoundReport;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSettings};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseSign {
    Plus,
    Minus,
}

impl PhaseSign {
    pub fn flipped(self) -> Self {
        match self {
            PhaseSign::Plus => PhaseSign::Minus,
            PhaseSign::Minus => PhaseSign::Plus,
        }
    }

    fn factor(self) -> f64 {
        match self {
            PhaseSign::Plus => 1.0,
            PhaseSign::Minus => -1.0,
        }
    }
}

/// Amplitude `φ(x) = sin²(πx/N)` or `sin(πx/N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Amplitude {
    SinSq,
    Sin,
}

impl Amplitude {
    /// The amplitude as a function of `y = πx/N`.
    pub fn at_angle(self, y: f64) -> f64 {
        match self {
            Amplitude::SinSq => {
                let s = y.sin();
                s * s
            }
            Amplitude::Sin => y.sin(),
        }
    }
}

/// `Σ_k φ(k) e(f(k))` with `f(x) = (γN/π) sin(πx/N) ± ρx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSumSpec {
    pub n_sites: usize,
    pub gamma: f64,
    pub rho: f64,
    pub phase_sign: PhaseSign,
    pub amplitude: Amplitude,
}

impl ExpSumSpec {
    pub fn new(n_sites: usize, gamma: f64, rho: f64, phase_sign: PhaseSign, amplitude: Amplitude) -> Result<Self> {
        if n_sites % 2 == 1 {
            return Err(Error::OddSiteCount(n_sites));
        }
        if n_sites < 2 {
            return Err(Error::TooFewSites(n_sites));
        }
        if !(gamma >= 0.0 && gamma <= n_sites as f64) {
            return Err(Error::GammaOutOfRange { gamma, n_sites });
        }
        assert!(rho.abs() <= 0.5, "rho = {rho} outside [-1/2, 1/2]");
        Ok(ExpSumSpec {
            n_sites,
            gamma,
            rho,
            phase_sign,
            amplitude,
        })
    }

    /// The same sum with the linear phase term negated.
    pub fn flipped(&self) -> Self {
        ExpSumSpec {
            phase_sign: self.phase_sign.flipped(),
            ..*self
        }
    }

    /// Signed linear coefficient `s = ±ρ`.
    pub fn slope(&self) -> f64 {
        self.phase_sign.factor() * self.rho
    }

    fn n(&self) -> f64 {
        self.n_sites as f64
    }

    pub fn phase(&self, x: f64) -> f64 {
        self.gamma * self.n() / PI * (PI * x / self.n()).sin() + self.slope() * x
    }

    pub fn amplitude_at(&self, x: f64) -> f64 {
        self.amplitude.at_angle(PI * x / self.n())
    }

    /// Phase evaluated at an integer abscissa; `sin(πk/N)` is reduced
    /// exactly and the linear term modulo 1 where that is exact.
    fn term(&self, k: usize) -> Complex64 {
        let n = self.n_sites;
        let angle = PI * (k % (2 * n)) as f64 / n as f64;
        let phase = self.gamma * self.n() / PI * angle.sin() + self.slope() * k as f64;
        Complex64::from_polar(self.amplitude.at_angle(angle), 2.0 * PI * phase.rem_euclid(1.0))
    }
}

fn sum_terms(spec: &ExpSumSpec, range: std::ops::RangeInclusive<usize>) -> Complex64 {
    let mut re = crate::summation::CompensatedSum::new();
    let mut im = crate::summation::CompensatedSum::new();
    for k in range {
        let z = spec.term(k);
        re.add(z.re);
        im.add(z.im);
    }
    Complex64::new(re.value(), im.value())
}

/// `Σ_{k=0}^{N} φ(k) e(f(k))`, evaluated directly.
pub fn brute_exponential_sum(spec: &ExpSumSpec) -> Complex64 {
    sum_terms(spec, 0..=spec.n_sites)
}

/// `Σ_{0<k≤N/2} φ(k) e(f(k))`, the left-hand side of the truncated Poisson formula.
pub fn half_range_sum(spec: &ExpSumSpec) -> Complex64 {
    sum_terms(spec, 1..=spec.n_sites / 2)
}

/// `∫_0^{π/2} φ(y) e(G_ν(y)) dy` with `G_ν(y) = (N/π)(γ sin y ± ρy − νy)`.
///
/// Stationary points of `G_ν` are used as breakpoints and the initial panel
/// layout resolves roughly two panels per oscillation.
pub fn oscillatory_integral(nu: i64, spec: &ExpSumSpec, settings: &QuadratureSettings) -> Result<Complex64> {
    let n = spec.n();
    let gamma = spec.gamma;
    let mu = nu as f64 - spec.slope();
    let scale = n / PI;
    let g = move |y: f64| {
        let phase = scale * (gamma * y.sin() - mu * y);
        Complex64::from_polar(spec.amplitude.at_angle(y), 2.0 * PI * phase.rem_euclid(1.0))
    };

    let mut breakpoints = vec![0.0];
    if gamma > 0.0 && mu > 0.0 && mu < gamma {
        breakpoints.push((mu / gamma).acos());
    }
    breakpoints.push(PI / 2.0);
    let cycles = scale * (gamma + mu.abs() * PI / 2.0);
    let panels = (2.0 * cycles).ceil() as usize + 4;
    Ok(integrate(g, &breakpoints, panels, settings)?.value)
}

/// Explicit remainder `R` of the truncated Poisson formula on `[0, N/2]`
/// with `H = π`, `φ0 = φ1 = λ = 1` and `C0 = πγ/N`.
pub fn remainder_bound(spec: &ExpSumSpec, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::DeltaOutOfRange(delta));
    }
    let h = PI;
    let c0 = PI * spec.gamma / spec.n();
    // f' runs between s and γ + s, so |β − α| = γ
    let spread = spec.gamma;
    let inner = 10.0 / delta + 2.0 * (1.0 / delta).ln() + 4.5 / (1.0 + delta) - 4.5 * (1.0 + delta).ln()
        + 6.5 * (spread + 2.0).ln();
    Ok(2.0 * h * (9.42 + 9.0 * c0 + 12.0 * delta + inner / PI))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonDecomposition {
    /// `Σ_ν ∫_0^{N/2} φ(x) e(f(x) − νx) dx`
    pub shorter_sum: Complex64,
    pub remainder_bound: f64,
    pub nu_min: i64,
    pub nu_max: i64,
}

/// Replaces [`half_range_sum`] by a short sum of oscillatory integrals.
///
/// `f''` is non-positive here, so the frequency window is
/// `[min f' − Δ, max f' + Δ]` with `f'` ranging over `[s, γ + s]`.
pub fn truncated_poisson_decompose(
    spec: &ExpSumSpec,
    delta: f64,
    settings: &QuadratureSettings,
) -> Result<PoissonDecomposition> {
    let remainder = remainder_bound(spec, delta)?;
    let s = spec.slope();
    let nu_min = (s - delta).ceil() as i64;
    let nu_max = (spec.gamma + s + delta).floor() as i64;
    let integrals: Vec<Complex64> = (nu_min..=nu_max)
        .into_par_iter()
        .map(|nu| oscillatory_integral(nu, spec, settings))
        .collect::<Result<_>>()?;
    let scale = spec.n() / PI;
    let shorter_sum = integrals.iter().fold(Complex64::new(0.0, 0.0), |acc, z| acc + z * scale);
    Ok(PoissonDecomposition {
        shorter_sum,
        remainder_bound: remainder,
        nu_min,
        nu_max,
    })
}

fn e(phase: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * phase.rem_euclid(1.0))
}

/// Checks the truncated Poisson formula on the half range and the
/// reconstruction of the full sum `k = 0..=N` from both half-range pieces.
///
/// Reflecting `k ↦ N − k` maps the upper half onto a half-range sum with the
/// opposite linear sign, so
/// `Σ_0^N = H(s) + e(sN)·(H(−s) − φ(N/2)e(f_{−s}(N/2)))`.
pub fn poisson_checks(spec: &ExpSumSpec, delta: f64, settings: &QuadratureSettings) -> Result<[BoundReport; 2]> {
    let mirror = spec.flipped();
    let own = truncated_poisson_decompose(spec, delta, settings)?;
    let other = truncated_poisson_decompose(&mirror, delta, settings)?;
    let params = format!(
        "N={} gamma={} rho={} sign={:?} amplitude={:?} delta={}",
        spec.n_sites, spec.gamma, spec.rho, spec.phase_sign, spec.amplitude, delta
    );

    let half = BoundReport::new(
        "poisson_half_range",
        params.clone(),
        (half_range_sum(spec) - own.shorter_sum).norm(),
        own.remainder_bound,
        "truncated Poisson summation on [0, N/2] with explicit remainder",
    );

    let half_n = spec.n_sites / 2;
    let endpoint = mirror.amplitude_at(half_n as f64) * e(mirror.phase(half_n as f64));
    let reconstructed = own.shorter_sum + e(spec.slope() * spec.n()) * (other.shorter_sum - endpoint);
    let full = BoundReport::new(
        "poisson_full_sum",
        params,
        (brute_exponential_sum(spec) - reconstructed).norm(),
        own.remainder_bound + other.remainder_bound,
        "full sum rebuilt from the two reflected half-range reductions",
    );
    Ok([half, full])
}
