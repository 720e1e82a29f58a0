use proptest::prelude::*;
use qcghost::bounds::*;
use qcghost::lattice::{MORSE_KAPPA1, MORSE_KAPPA2};
use qcghost::quadrature::QuadratureSettings;
use qcghost::spectral::SpectralSolution;
use qcghost::{build_config, Error};

#[test]
fn calibrated_constants_carry_over_to_finer_lattices() {
    let k = EnvelopeConstants::calibrate(MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    for n_sites in [1000usize, 2000, 4000] {
        let c = build_config(n_sites, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
        let sol = SpectralSolution::new(&c);
        let l = c.interface() as i64;
        let sites = [l, l - 1, l + 1, l - 2, l + 7, l - 40, l + 300, 1, n_sites as i64];
        for i in 0..12 {
            let t = (1.0 + 0.35 * i as f64) / c.modulus().sqrt();
            for &n in &sites {
                let r = long_time_check(&sol, &k, t, n).unwrap();
                assert!(r.passed, "{r}");
            }
        }
        for f in [0.5, 1.0, 3.0, 10.0] {
            for d in [1i64, 2, 5, 10, 50, 300] {
                for n in [l + d, l - 1 - d] {
                    let r = short_time_check(&sol, &k, f * c.epsilon(), n).unwrap();
                    assert!(r.passed, "{r}");
                }
            }
        }
    }
}

#[test]
fn interface_partner_has_opposite_plateau() {
    // Dy(L-1,t) = -Dy(L,t), so the L-1 plateau is +κ2/(κ1+4κ2)
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let sol = SpectralSolution::new(&c);
    let l = c.interface() as i64;
    let upper = sol.time_averaged_gradient(l, 0.5, 1.5).unwrap();
    let lower = sol.time_averaged_gradient(l - 1, 0.5, 1.5).unwrap();
    assert!((upper + lower).abs() < 1e-14);
    assert!((lower + c.plateau()).abs() < 3.0 * c.epsilon().sqrt());
}

#[test]
fn short_time_bulk_decay_outruns_the_two_thirds_power() {
    // Outside the light cone the decay is much faster than distance^(-2/3),
    // so the envelope only becomes more conservative with distance. At
    // t = ε the cone reaches about √(κ1+4κ2) ≈ 2.5 sites.
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let sol = SpectralSolution::new(&c);
    let l = c.interface() as i64;
    let t = c.epsilon();
    let ratio = |d: i64| sol.gradient(l + d, t).unwrap().abs() * (d as f64 + 0.5).powf(2.0 / 3.0);
    let ratios: Vec<f64> = [2, 4, 8, 12].iter().map(|&d| ratio(d)).collect();
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
    assert!(sol.gradient(l + 50, t).unwrap().abs() < 1e-15);
}

#[test]
fn short_time_regime_is_enforced() {
    let c = build_config(200, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let sol = SpectralSolution::new(&c);
    let k = EnvelopeConstants::calibrate(MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    assert!(short_time_check(&sol, &k, 10.0 * c.epsilon(), 100).is_ok());
    assert!(matches!(
        short_time_check(&sol, &k, 11.0 * c.epsilon(), 100),
        Err(Error::NotShortTime { .. })
    ));
}

#[test]
fn reports_are_bitwise_reproducible() {
    let settings = QuadratureSettings::default();
    let spec = ExpSumSpec::new(300, 6.3, 0.2, PhaseSign::Minus, Amplitude::Sin).unwrap();
    assert_eq!(lemma_sweep(&spec, &settings).unwrap(), lemma_sweep(&spec, &settings).unwrap());
    assert_eq!(poisson_checks(&spec, 0.5, &settings).unwrap(), poisson_checks(&spec, 0.5, &settings).unwrap());
    let k1 = EnvelopeConstants::calibrate(MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let k2 = EnvelopeConstants::calibrate(MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    assert_eq!(k1, k2);
}

#[test]
fn conjugation_on_symmetric_instances() {
    // with ρ chosen so that ρN is an integer the linear phase vanishes on
    // integers, and flipping its sign leaves the sum unchanged
    let a = ExpSumSpec::new(200, 3.7, 0.25, PhaseSign::Plus, Amplitude::Sin).unwrap();
    let b = brute_exponential_sum(&a);
    let c = brute_exponential_sum(&a.flipped());
    assert!((b.conj() - c.conj()).norm() < 1e-10);
    // the reflection k -> N-k turns the plus sum into e(ρN) times the minus sum
    let half_turn = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 50.0);
    assert!((b - half_turn * c).norm() < 1e-10);
}

#[test]
fn interior_aggregate_against_gamma_itself() {
    // The aggregate is bounded by its integral πγ/2 but not by γ.
    let spec = ExpSumSpec::new(1000, 50.0, 0.0, PhaseSign::Plus, Amplitude::Sin).unwrap();
    let r = interior_aggregate_check(&spec).unwrap();
    assert!(r.passed, "{r}");
    assert!(r.quantity > 50.0);
}

#[test]
fn euler_maclaurin_series_forms_agree() {
    let settings = QuadratureSettings::default();
    for x in [0.0, 0.7, 2.0, 5.0] {
        let a = double_factorial_series(x);
        let b = mean_integral(x, &settings).unwrap();
        assert!((a - b).abs() < 1e-10, "x={x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemma_bounds_hold_on_random_instances(
        half_n in 50usize..250,
        gamma in 1.0f64..12.0,
        rho in -0.5f64..=0.5,
        minus in any::<bool>(),
    ) {
        let sign = if minus { PhaseSign::Minus } else { PhaseSign::Plus };
        let spec = ExpSumSpec::new(2 * half_n, gamma, rho, sign, Amplitude::Sin).unwrap();
        for r in lemma_sweep(&spec, &QuadratureSettings::default()).unwrap() {
            prop_assert!(r.passed, "{}", r);
        }
        let sq = ExpSumSpec::new(2 * half_n, gamma, 0.0, sign, Amplitude::SinSq).unwrap();
        for r in lemma_sweep(&sq, &QuadratureSettings::default()).unwrap() {
            prop_assert!(r.passed, "{}", r);
        }
    }

    #[test]
    fn poisson_reconstruction_on_random_instances(
        half_n in 25usize..200,
        gamma in 0.0f64..15.0,
        rho in -0.5f64..=0.5,
    ) {
        let spec = ExpSumSpec::new(2 * half_n, gamma, rho, PhaseSign::Plus, Amplitude::Sin).unwrap();
        for r in poisson_checks(&spec, 0.5, &QuadratureSettings::default()).unwrap() {
            prop_assert!(r.passed, "{}", r);
        }
    }
}
