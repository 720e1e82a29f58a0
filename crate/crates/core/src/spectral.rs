//! Closed-form solution of the Cauchy–Born error model.
//!
//! With `ω_k = (2/ε)√(κ1+4κ2) sin(kπ/N)` the error and its discrete gradient
//! are finite mode sums:
//!
//! ```text
//! y(n,t)  =  (ε/N) · 2κ2/(κ1+4κ2) · Σ_{k=1}^{N-1} sin²(ω_k t/2) cos(2kπ(n-L)/N)
//! Dy(n,t) = -(1/N) · 4κ2/(κ1+4κ2) · Σ_{k=0}^{N}   sin(2kπ(n+1/2-L)/N) sin(kπ/N) sin²(ω_k t/2)
//! ```
//!
//! Trigonometric arguments of the form `2π·(integer)/N` are reduced exactly in
//! integer arithmetic before evaluation.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Field, FieldKind, LatticeConfig};
use crate::summation::SummationOrder;

/// Dispersion relation `ω_k = (2/ε)√(κ1+4κ2) sin(kπ/N)` for `0 ≤ k ≤ N`.
pub fn dispersion(config: &LatticeConfig, k: usize) -> Result<f64> {
    let n = config.n_sites();
    if k > n {
        return Err(Error::ModeOutOfRange { k, n_sites: n });
    }
    Ok(2.0 * n as f64 * config.modulus().sqrt() * (PI * k as f64 / n as f64).sin())
}

/// Dimensionless time and position parameters of the exponential sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeScaleParams {
    /// `t·√(κ1+4κ2)`
    pub gamma: f64,
    /// `(n + 1/2 - L)/N`
    pub rho: f64,
}

impl TimeScaleParams {
    pub fn new(config: &LatticeConfig, t: f64, n: i64) -> Self {
        TimeScaleParams {
            gamma: t * config.modulus().sqrt(),
            rho: (n as f64 + 0.5 - config.interface() as f64) / config.n_sites() as f64,
        }
    }
}

/// Evaluator for the closed-form Model I solution.
#[derive(Debug, Clone)]
pub struct SpectralSolution {
    config: LatticeConfig,
    order: SummationOrder,
    omega: Vec<f64>,
    sin_half: Vec<f64>,
}

impl SpectralSolution {
    pub fn new(config: &LatticeConfig) -> Self {
        Self::with_order(config, SummationOrder::default())
    }

    pub fn with_order(config: &LatticeConfig, order: SummationOrder) -> Self {
        let n = config.n_sites();
        let sin_half: Vec<f64> = (0..=n).map(|k| (PI * k as f64 / n as f64).sin()).collect();
        let scale = 2.0 * n as f64 * config.modulus().sqrt();
        let omega = sin_half.iter().map(|s| scale * s).collect();
        SpectralSolution {
            config: *config,
            order,
            omega,
            sin_half,
        }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn order(&self) -> SummationOrder {
        self.order
    }

    /// Cached `ω_k`, `k = 0..=N`.
    pub fn omegas(&self) -> &[f64] {
        &self.omega
    }

    fn n(&self) -> usize {
        self.config.n_sites()
    }

    /// `cos(2π·j/N)` with `j` reduced modulo `N`.
    fn cos_frac(&self, j: i64) -> f64 {
        let n = self.n() as i64;
        (2.0 * PI * j.rem_euclid(n) as f64 / n as f64).cos()
    }

    fn check_site(&self, n: i64) -> Result<()> {
        if n < 1 || n > self.n() as i64 {
            return Err(Error::SiteOutOfRange { n, n_sites: self.n() });
        }
        Ok(())
    }

    fn check_time(t: f64) -> Result<()> {
        if !(t >= 0.0) {
            return Err(Error::NegativeTime(t));
        }
        Ok(())
    }

    /// Lattice Green's function
    /// `G(n,t) = t/N + (1/N) Σ_{k=1}^{N-1} sin(ω_k t)/ω_k · cos(2knπ/N)`.
    ///
    /// Defined for every integer `n` (period `N`) and every real `t`; the
    /// function is odd in `t`.
    pub fn green_function(&self, n: i64, t: f64) -> f64 {
        let n_sites = self.n();
        let inv_n = 1.0 / n_sites as f64;
        let modes = self
            .order
            .sum((1..n_sites).map(|k| (self.omega[k] * t).sin() / self.omega[k] * self.cos_frac(k as i64 * n)));
        t * inv_n + inv_n * modes
    }

    /// `y(n,t)` for `1 ≤ n ≤ N`, `t ≥ 0`.
    pub fn displacement(&self, n: i64, t: f64) -> Result<f64> {
        self.check_site(n)?;
        Self::check_time(t)?;
        Ok(self.displacement_unchecked(n, t))
    }

    fn displacement_unchecked(&self, n: i64, t: f64) -> f64 {
        let c = &self.config;
        let n_sites = self.n();
        let l = c.interface() as i64;
        let prefactor = c.epsilon() / n_sites as f64 * 2.0 * c.kappa2() / c.modulus();
        prefactor
            * self
                .order
                .sum((1..n_sites).map(|k| self.displacement_term(k, n - l, t)))
    }

    /// Mode-`k` term `sin²(ω_k t/2) cos(2kπ·offset/N)` of the displacement sum,
    /// with `offset = n - L`.
    pub fn displacement_term(&self, k: usize, offset: i64, t: f64) -> f64 {
        let s = (0.5 * self.omega[k] * t).sin();
        s * s * self.cos_frac(k as i64 * offset)
    }

    /// `Dy(n,t)` for `1 ≤ n ≤ N`, `t ≥ 0`, summed over `k = 0..=N`.
    pub fn gradient(&self, n: i64, t: f64) -> Result<f64> {
        self.check_site(n)?;
        Self::check_time(t)?;
        Ok(self.gradient_unchecked(n, t))
    }

    fn gradient_unchecked(&self, n: i64, t: f64) -> f64 {
        let c = &self.config;
        let prefactor = -4.0 * c.kappa2() / (c.modulus() * self.n() as f64);
        prefactor
            * self
                .order
                .sum((0..=self.n()).map(|k| self.gradient_term(k, n, t)))
    }

    /// Mode-`k` term `sin(2kπ(n+1/2-L)/N) sin(kπ/N) sin²(ω_k t/2)` of the gradient sum.
    pub fn gradient_term(&self, k: usize, n: i64, t: f64) -> f64 {
        let s = (0.5 * self.omega[k] * t).sin();
        self.gradient_shape(k, n) * s * s
    }

    /// `sin(2kπ(n+1/2-L)/N)·sin(kπ/N)`; the half-integer shift is reduced
    /// modulo `2N` as `π·k(2(n-L)+1)/N`.
    fn gradient_shape(&self, k: usize, n: i64) -> f64 {
        let n_sites = self.n() as i64;
        let l = self.config.interface() as i64;
        let j = (k as i64 * (2 * (n - l) + 1)).rem_euclid(2 * n_sites);
        (PI * j as f64 / n_sites as f64).sin() * self.sin_half[k]
    }

    /// Exact time average of `Dy(n,·)` over `[t0, t1]`, mode by mode.
    pub fn time_averaged_gradient(&self, n: i64, t0: f64, t1: f64) -> Result<f64> {
        self.check_site(n)?;
        Self::check_time(t0)?;
        Self::check_time(t1)?;
        if t1 <= t0 {
            return self.gradient(n, t0);
        }
        let c = &self.config;
        let prefactor = -4.0 * c.kappa2() / (c.modulus() * self.n() as f64);
        let span = t1 - t0;
        let sum = self.order.sum((0..=self.n()).map(|k| {
            let w = self.omega[k];
            let mean_sq = if w == 0.0 {
                0.0
            } else {
                0.5 - ((w * t1).sin() - (w * t0).sin()) / (2.0 * w * span)
            };
            self.gradient_shape(k, n) * mean_sq
        }));
        Ok(prefactor * sum)
    }

    /// `y(·,t)` on every site.
    pub fn displacement_field(&self, t: f64) -> Result<Field> {
        Self::check_time(t)?;
        let vals = (1..=self.n() as i64)
            .into_par_iter()
            .map(|n| self.displacement_unchecked(n, t))
            .collect();
        Field::from_values(&self.config, FieldKind::Displacement, vals)
    }

    /// `Dy(·,t)` on every site.
    pub fn gradient_field(&self, t: f64) -> Result<Field> {
        Self::check_time(t)?;
        let vals = (1..=self.n() as i64)
            .into_par_iter()
            .map(|n| self.gradient_unchecked(n, t))
            .collect();
        Field::from_values(&self.config, FieldKind::Gradient, vals)
    }

    /// `2|κ2|ε/(κ1+4κ2)`, the uniform bound on `|y|`.
    pub fn displacement_bound(&self) -> f64 {
        let c = &self.config;
        2.0 * c.kappa2().abs() * c.epsilon() / c.modulus()
    }

    /// `4|κ2|/(κ1+4κ2)`, the uniform bound on `|Dy|`.
    pub fn gradient_bound(&self) -> f64 {
        let c = &self.config;
        4.0 * c.kappa2().abs() / c.modulus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{apply_operator, build_config, ghost_force, OperatorKind, MORSE_KAPPA1, MORSE_KAPPA2};

    fn morse(n: usize) -> LatticeConfig {
        build_config(n, MORSE_KAPPA1, MORSE_KAPPA2).unwrap()
    }

    #[test]
    fn dispersion_endpoints_and_symmetry() {
        let c = morse(64);
        assert_eq!(dispersion(&c, 0).unwrap(), 0.0);
        let top = 2.0 * 64.0 * c.modulus().sqrt();
        assert!((dispersion(&c, 32).unwrap() - top).abs() < 1e-12 * top);
        for k in 0..32 {
            assert!(dispersion(&c, k + 1).unwrap() >= dispersion(&c, k).unwrap());
        }
        for k in 0..=64 {
            let a = dispersion(&c, k).unwrap();
            let b = dispersion(&c, 64 - k).unwrap();
            assert!((a - b).abs() <= 1e-12 * top);
        }
        assert!(matches!(dispersion(&c, 65), Err(Error::ModeOutOfRange { .. })));
    }

    #[test]
    fn dispersion_is_cauchy_born_eigenvalue() {
        let c = morse(48);
        for k in [1usize, 7, 24] {
            let w = dispersion(&c, k).unwrap();
            let theta = 2.0 * PI * k as f64 / 48.0;
            let mode = Field::from_fn(&c, FieldKind::Displacement, |n| (theta * n as f64).cos());
            let out = apply_operator(&c, OperatorKind::CauchyBorn, &mode).unwrap();
            for n in 1..=48 {
                assert!((out.at(n) + w * w * mode.at(n)).abs() < 1e-9 * w * w);
            }
        }
    }

    #[test]
    fn green_function_initial_data_and_periodicity() {
        let c = morse(40);
        let s = SpectralSolution::new(&c);
        for n in -5..45 {
            assert_eq!(s.green_function(n, 0.0), 0.0);
            assert_eq!(s.green_function(n, 0.37), s.green_function(n + 40, 0.37));
        }
        let h = 1e-6 * c.epsilon() / c.modulus().sqrt();
        for n in 0..40 {
            let rate = (s.green_function(n, h) - s.green_function(n, -h)) / (2.0 * h);
            let delta = if n == 0 { 1.0 } else { 0.0 };
            assert!((rate - delta).abs() < 1e-4, "n={n}: {rate}");
        }
    }

    #[test]
    fn displacement_vanishes_at_start() {
        let s = SpectralSolution::new(&morse(32));
        for n in 1..=32 {
            assert_eq!(s.displacement(n, 0.0).unwrap(), 0.0);
            assert_eq!(s.gradient(n, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn displacement_matches_green_function_convolution() {
        // y(n,t) = ∫_0^t Σ_m G(n-m, t-s) f(m) ds by composite Simpson, 1000 panels
        let c = morse(32);
        let s = SpectralSolution::new(&c);
        let f = ghost_force(&c);
        let t = 0.3;
        let panels = 1000;
        let h = t / panels as f64;
        for n in [1i64, 10, 15, 16, 17, 25, 32] {
            let integrand = |tau: f64| -> f64 {
                (1..=32i64)
                    .filter(|m| f.at(*m) != 0.0)
                    .map(|m| s.green_function(n - m, t - tau) * f.at(m))
                    .sum()
            };
            let mut acc = integrand(0.0) + integrand(t);
            for i in 1..panels {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                acc += w * integrand(i as f64 * h);
            }
            let quad = acc * h / 3.0;
            let closed = s.displacement(n, t).unwrap();
            assert!((quad - closed).abs() < 1e-6, "n={n}: {quad} vs {closed}");
        }
    }

    #[test]
    fn secular_term_cancels_against_zero_mean_forcing() {
        let c = morse(24);
        let s = SpectralSolution::new(&c);
        let f = ghost_force(&c);
        let t = 0.7;
        let full: f64 = (1..=24i64).map(|m| s.green_function(5 - m, t) * f.at(m)).sum();
        let without_secular: f64 = (1..=24i64)
            .map(|m| (s.green_function(5 - m, t) - t / 24.0) * f.at(m))
            .sum();
        assert!((full - without_secular).abs() < 1e-9 * full.abs().max(1.0));
    }

    #[test]
    fn gradient_is_difference_of_displacements() {
        let c = morse(64);
        let s = SpectralSolution::new(&c);
        for &t in &[0.003, 0.05, 0.4, 1.3] {
            for n in 1..=64i64 {
                let next = if n == 64 { 1 } else { n + 1 };
                let dy = (s.displacement(next, t).unwrap() - s.displacement(n, t).unwrap()) / c.epsilon();
                assert!((dy - s.gradient(n, t).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn gradient_endpoint_modes_vanish() {
        let c = morse(50);
        let s = SpectralSolution::new(&c);
        for n in 1..=50 {
            for &t in &[0.1, 0.77] {
                assert_eq!(s.gradient_term(0, n, t), 0.0);
                assert!(s.gradient_term(50, n, t).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn mode_term_vanishes_after_full_period() {
        let c = morse(30);
        let s = SpectralSolution::new(&c);
        for k in [1usize, 4, 15] {
            let period = 2.0 * PI / s.omegas()[k];
            assert!(s.displacement_term(k, 3, period).abs() < 1e-24);
        }
    }

    #[test]
    fn displacement_has_zero_mean() {
        let c = morse(80);
        let s = SpectralSolution::new(&c);
        for &t in &[0.01, 0.2, 1.0, 3.3] {
            let y = s.displacement_field(t).unwrap();
            assert!(y.values().iter().sum::<f64>().abs() <= 1e-10);
        }
    }

    #[test]
    fn summation_orders_agree() {
        let c = morse(400);
        let a = SpectralSolution::with_order(&c, SummationOrder::AscendingK);
        let b = SpectralSolution::new(&c);
        let da = a.gradient(200, 0.9).unwrap();
        let db = b.gradient(200, 0.9).unwrap();
        assert!((da - db).abs() < 1e-13);
    }

    #[test]
    fn time_average_matches_dense_sampling() {
        let c = morse(100);
        let s = SpectralSolution::new(&c);
        let (t0, t1) = (0.5, 1.5);
        let m = 200_000;
        let h = (t1 - t0) / m as f64;
        let mean: f64 = (0..m)
            .map(|i| s.gradient(50, t0 + (i as f64 + 0.5) * h).unwrap())
            .sum::<f64>()
            / m as f64;
        let exact = s.time_averaged_gradient(50, t0, t1).unwrap();
        assert!((mean - exact).abs() < 1e-6, "{mean} vs {exact}");
    }

    #[test]
    fn rejects_out_of_range_arguments() {
        let s = SpectralSolution::new(&morse(16));
        assert!(s.displacement(0, 0.1).is_err());
        assert!(s.gradient(17, 0.1).is_err());
        assert!(s.gradient(3, -0.1).is_err());
    }

    #[test]
    fn time_scale_params() {
        let c = morse(2000);
        let p = TimeScaleParams::new(&c, 1.0, 1000);
        assert!((p.gamma - c.modulus().sqrt()).abs() < 1e-15);
        assert_eq!(p.rho, 0.5 / 2000.0);
    }
}
