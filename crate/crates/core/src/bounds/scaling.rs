use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::spectral::SpectralSolution;

/// Least-squares slope of `ln(amplitude)` against `ln(ε)`.
pub fn scaling_fit(sweep: &[(f64, f64)]) -> Result<f64> {
    if sweep.len() < 3 {
        return Err(Error::DegenerateSweep("at least three points are required"));
    }
    if sweep.iter().any(|&(e, a)| !(e > 0.0 && a > 0.0)) {
        return Err(Error::DegenerateSweep("epsilon and amplitude must be positive"));
    }
    let mut eps: Vec<f64> = sweep.iter().map(|p| p.0).collect();
    eps.sort_by(f64::total_cmp);
    if eps.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DegenerateSweep("epsilon values must be distinct"));
    }
    let n = sweep.len() as f64;
    let xs: Vec<f64> = sweep.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = sweep.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Largest `|Dy(n,t) − centre|` over `[t0, t1]`, where `centre` is the exact
/// time average of `Dy(n,·)` over the same window.
///
/// Sampling resolves the fastest mode: the step is one eighth of
/// `2π/ω_max = π/(N√(κ1+4κ2))`.
pub fn peak_oscillation_amplitude(solution: &SpectralSolution, n: i64, t0: f64, t1: f64) -> Result<f64> {
    let config = solution.config();
    let centre = solution.time_averaged_gradient(n, t0, t1)?;
    let period = PI / (config.n_sites() as f64 * config.modulus().sqrt());
    let samples = ((t1 - t0) / (period / 8.0)).ceil().max(1.0) as usize;
    let peaks: Vec<f64> = (0..=samples)
        .into_par_iter()
        .map(|i| {
            let t = t0 + (t1 - t0) * i as f64 / samples as f64;
            solution.gradient(n, t).map(|dy| (dy - centre).abs())
        })
        .collect::<Result<_>>()?;
    Ok(peaks.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_square_root() {
        let pts: Vec<(f64, f64)> = [2000.0, 4000.0, 8000.0].iter().map(|&n: &f64| (1.0 / n, (1.0 / n).sqrt())).collect();
        assert!((scaling_fit(&pts).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_sweeps() {
        assert!(scaling_fit(&[(0.1, 1.0), (0.2, 2.0)]).is_err());
        assert!(scaling_fit(&[(0.1, 1.0), (0.1, 2.0), (0.3, 1.0)]).is_err());
        assert!(scaling_fit(&[(0.1, 1.0), (0.2, 0.0), (0.3, 1.0)]).is_err());
    }
}
