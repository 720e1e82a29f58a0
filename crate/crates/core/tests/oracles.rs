//! Frozen reference values. Each was computed once by an independent route
//! (hand arithmetic, a closed form, or a separate series) and is pinned here.

use qcghost::bounds::short_time_series;
use qcghost::dynamics::{dt_max, verlet_step, ModelKind, ModelSpec, SimulationState};
use qcghost::lattice::{ghost_force, MORSE_KAPPA1, MORSE_KAPPA2};
use qcghost::spectral::{dispersion, SpectralSolution};
use qcghost::{build_config, OperatorKind};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1e-300)
}

#[test]
fn morse_plateau_level() {
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    assert!((c.modulus() - 6.1321).abs() < 1e-12);
    assert!((c.plateau() + 0.067546191354).abs() < 1e-11);
}

#[test]
fn ghost_force_at_n2000() {
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let f = ghost_force(&c);
    assert!(close(f.at(1000), 1656.8, 1e-14));
    assert!(close(f.at(999), -828.4, 1e-14));
    assert!(close(f.at(1001), -828.4, 1e-14));
}

#[test]
fn closed_form_values_at_unit_time() {
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let sol = SpectralSolution::new(&c);
    assert!(close(sol.gradient(1000, 1.0).unwrap(), -6.943_851_228_313_305e-2, 1e-12));
    assert!(close(sol.displacement(1000, 1.0).unwrap(), 3.472_192_728_925_881e-5, 1e-12));
}

#[test]
fn short_time_mean_value() {
    // J0(2) - J1(2)/2 with J0(2) = 0.22389077914123567, J1(2) = 0.5767248077568734
    let expected = 0.223_890_779_141_235_67 - 0.576_724_807_756_873_4 / 2.0;
    assert!((short_time_series(1.0).unwrap().value - expected).abs() < 1e-15);
    assert_eq!(short_time_series(0.0).unwrap().value, 0.5);
}

#[test]
fn time_step_limits() {
    let c = build_config(2000, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let cb = dt_max(&c, OperatorKind::CauchyBorn);
    assert!(close(cb, c.epsilon() / c.modulus().sqrt(), 1e-14));
    assert!(close(dt_max(&c, OperatorKind::QC), 2.002_299_961_291_998e-4, 1e-12));
}

#[test]
fn fastest_mode() {
    let c = build_config(400, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let w = dispersion(&c, 200).unwrap();
    assert!(close(w, 800.0 * 6.1321f64.sqrt(), 1e-14));
}

#[test]
fn first_verlet_step_from_rest() {
    let c = build_config(64, MORSE_KAPPA1, MORSE_KAPPA2).unwrap();
    let model = ModelSpec::for_model(&c, ModelKind::III);
    let dt = 1e-4;
    let s = verlet_step(&c, &model, &SimulationState::initial(&c), dt).unwrap();
    let f = ghost_force(&c);
    for n in 1..=64 {
        let want = 0.5 * dt * dt * f.at(n);
        assert!((s.y.at(n) - want).abs() <= 1e-14 * want.abs().max(1e-300), "site {n}");
    }
}
