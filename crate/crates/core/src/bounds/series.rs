//! The short-time mean value
//! `S(x) = Σ_{m≥0} (−1)^m x^{2m}/(m!)² · (2m+1)/(2m+2)
//!       = (1/π) ∫_0^π sin²θ cos(2x sinθ) dθ`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureSettings};

/// Above this argument the alternating series loses too many digits to
/// cancellation and the periodic trapezoid rule is used instead.
pub const SERIES_SWITCH: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesMethod {
    PowerSeries,
    Trapezoid,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShortTimeSeries {
    pub x: f64,
    pub method: SeriesMethod,
    /// Series terms summed, or trapezoid nodes.
    pub terms_used: usize,
    pub value: f64,
    /// First omitted series term, or the change from halving the trapezoid step.
    pub remainder_bound: f64,
}

fn power_series(x: f64) -> ShortTimeSeries {
    let x2 = x * x;
    // p_m = x^{2m}/(m!)^2 by running ratio
    let mut p = 1.0;
    let mut sum = 0.0;
    let mut m = 0usize;
    loop {
        let mf = m as f64;
        let term = if m % 2 == 0 { p } else { -p } * (2.0 * mf + 1.0) / (2.0 * mf + 2.0);
        sum += term;
        m += 1;
        p *= x2 / (m as f64 * m as f64);
        let next = p * (2.0 * m as f64 + 1.0) / (2.0 * m as f64 + 2.0);
        let decreasing = m as f64 > x;
        if decreasing && next < 1e-15 * sum.abs().max(1.0) {
            return ShortTimeSeries {
                x,
                method: SeriesMethod::PowerSeries,
                terms_used: m,
                value: sum,
                remainder_bound: next,
            };
        }
    }
}

fn trapezoid(x: f64, nodes: usize) -> f64 {
    // the integrand is π-periodic and analytic
    let h = PI / nodes as f64;
    let total: f64 = (0..nodes)
        .map(|j| {
            let s = (j as f64 * h).sin();
            s * s * (2.0 * x * s).cos()
        })
        .sum();
    total / nodes as f64
}

/// Evaluates `S(x)` for `x ≥ 0`.
pub fn short_time_series(x: f64) -> Result<ShortTimeSeries> {
    if !(x >= 0.0) {
        return Err(Error::NegativeArgument(x));
    }
    if x <= SERIES_SWITCH {
        return Ok(power_series(x));
    }
    let nodes = 2 * (x.ceil() as usize + 40);
    let fine = trapezoid(x, nodes);
    let coarse = trapezoid(x, nodes / 2);
    Ok(ShortTimeSeries {
        x,
        method: SeriesMethod::Trapezoid,
        terms_used: nodes,
        value: fine,
        remainder_bound: (fine - coarse).abs(),
    })
}

/// `Σ (−1)^m (2x)^{2m}/(2m)! · (2m+1)!!/(2m+2)!!`, the same quantity
/// expanded through the Wallis integrals.
pub fn double_factorial_series(x: f64) -> f64 {
    let y2 = 4.0 * x * x;
    let mut a = 1.0; // (2x)^{2m}/(2m)!
    let mut b = 0.5; // (2m+1)!!/(2m+2)!!
    let mut sum = 0.0;
    let mut m = 0usize;
    loop {
        let term = if m % 2 == 0 { a * b } else { -a * b };
        sum += term;
        let mf = m as f64;
        a *= y2 / ((2.0 * mf + 1.0) * (2.0 * mf + 2.0));
        b *= (2.0 * mf + 3.0) / (2.0 * mf + 4.0);
        m += 1;
        if 2.0 * m as f64 > 2.0 * x && a * b < 1e-17 * sum.abs().max(1.0) {
            return sum;
        }
    }
}

/// `(1/π) ∫_0^π sin²θ cos(2x sinθ) dθ` by adaptive quadrature.
pub fn mean_integral(x: f64, settings: &QuadratureSettings) -> Result<f64> {
    let f = |theta: f64| {
        let s = theta.sin();
        Complex64::new(s * s * (2.0 * x * s).cos(), 0.0)
    };
    let panels = (2.0 * x / PI).ceil() as usize + 4;
    Ok(integrate(f, &[0.0, PI], panels, settings)?.value.re / PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_zero_is_half() {
        let s = short_time_series(0.0).unwrap();
        assert_eq!(s.value, 0.5);
        assert_eq!(s.method, SeriesMethod::PowerSeries);
    }

    #[test]
    fn rejects_negative_argument() {
        assert_eq!(short_time_series(-1.0), Err(Error::NegativeArgument(-1.0)));
    }

    #[test]
    fn first_omitted_term_bounds_the_tail() {
        for &x in &[0.1, 0.5, 0.9, 1.0] {
            let s = short_time_series(x).unwrap();
            let reference = double_factorial_series(x);
            assert!((s.value - reference).abs() <= s.remainder_bound + 1e-16, "x={x}");
            assert!(s.remainder_bound < 1e-15);
        }
    }

    #[test]
    fn methods_agree_across_the_switch() {
        for &x in &[3.5, 4.0, 4.5] {
            let series = power_series(x).value;
            let trap = trapezoid(x, 2 * (x.ceil() as usize + 40));
            assert!((series - trap).abs() < 1e-13, "x={x}");
        }
    }

    #[test]
    fn three_evaluations_agree() {
        let settings = QuadratureSettings::default();
        for &x in &[0.0, 0.3, 1.7, 3.0, 6.0, 12.5, 24.8] {
            let s = short_time_series(x).unwrap().value;
            let q = mean_integral(x, &settings).unwrap();
            assert!((s - q).abs() < 1e-10, "x={x}: {s} vs {q}");
            if x <= 6.0 {
                assert!((double_factorial_series(x) - q).abs() < 1e-10, "x={x}");
            }
        }
    }

    #[test]
    fn large_arguments_do_not_overflow() {
        let s = short_time_series(200.0).unwrap();
        assert!(s.value.is_finite() && s.value.abs() < 0.1);
        assert!(double_factorial_series(20.0).is_finite());
    }
}
