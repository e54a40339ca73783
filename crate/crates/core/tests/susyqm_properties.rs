use std::f64::consts::PI;

use proptest::prelude::*;
use tunneling::specfun::{integrate, Interval, QuadratureSpec};
use tunneling::susyqm::*;

fn level(ell: u32) -> SusyLevel {
    SusyLevel::new(ell).unwrap()
}

fn samples() -> Vec<f64> {
    (-60..=60).map(|i| f64::from(i) * 0.1).collect()
}

#[test]
fn bound_states_are_orthonormal() {
    let spec = QuadratureSpec::default();
    for ell in 1..=4 {
        let lv = level(ell);
        let states: Vec<_> = (0..ell).map(|m| bound_state(&lv, m).unwrap()).collect();
        for (i, a) in states.iter().enumerate() {
            for (j, b) in states.iter().enumerate() {
                let o = a.overlap(b, -Z_WINDOW, Z_WINDOW, &spec).unwrap();
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((o.re - expected).abs() < 1e-8 && o.im.abs() < 1e-8, "ell {ell} ({i},{j}): {o}");
            }
        }
    }
}

#[test]
fn eigen_residuals_vanish() {
    let z = samples();
    for ell in 1..=4 {
        let lv = level(ell);
        for m in 0..ell {
            let s = bound_state(&lv, m).unwrap();
            assert!(eigen_residual(&lv, &s, &z) <= 1e-10, "bound ell {ell} m {m}");
        }
        for k in [0.3, 1.0, 2.7] {
            let s = scattering_state(&lv, k);
            assert!(eigen_residual(&lv, &s, &z) <= 1e-10, "scattering ell {ell} k {k}");
        }
    }
}

#[test]
fn density_sum_rule() {
    for ell in 1..=3 {
        let lv = level(ell);
        let total = integrate(|k| spectral_density(&lv, k), Interval::Real, &QuadratureSpec::default()).unwrap();
        assert!((total + f64::from(ell)).abs() < 1e-8, "ell {ell}: {total}");
    }
}

#[test]
fn closed_and_integrated_densities_agree() {
    let spec = QuadratureSpec::default();
    for ell in 1..=2 {
        let lv = level(ell);
        for k in [0.5, 1.0, 2.0] {
            let a = spectral_density(&lv, k);
            let b = integrated_density(&lv, k, &spec).unwrap();
            assert!((a - b).abs() < 1e-6, "ell {ell} k {k}: {a} vs {b}");
        }
    }
}

#[test]
fn scattering_overlaps_approach_free_waves() {
    // On [−L, L] the overlap of two scattering states differs from the
    // free-wave overlap by an amount bounded in L, against a diagonal that
    // grows like L/π.
    let spec = QuadratureSpec::default().with_tolerance(1e-10);
    let lv = level(2);
    let free = |k: f64, kp: f64, l: f64| {
        if k == kp {
            l / PI
        } else {
            ((kp - k) * l).sin() / (PI * (kp - k))
        }
    };
    for (k, kp) in [(0.7, 0.7), (0.7, 1.3), (1.0, 2.5)] {
        let a = scattering_state(&lv, k);
        let b = scattering_state(&lv, kp);
        let mut scaled = Vec::new();
        for l in [10.0, 20.0, 40.0] {
            let o = a.overlap(&b, -l, l, &spec).unwrap();
            let diff = (o - free(k, kp, l)).norm() * PI / l;
            assert!(diff * l < 12.0, "k {k} k' {kp} L {l}: {diff}");
            scaled.push(diff);
        }
        assert!(scaled[2] < scaled[0], "no 1/L decay for k {k} k' {kp}: {scaled:?}");
    }
}

#[test]
fn shape_invariance_constant_is_two_ell_minus_one() {
    for ell in 1..=5 {
        let si = shape_invariance_residual(&level(ell), &samples()).unwrap();
        assert!((si.constant - f64::from(2 * ell - 1)).abs() < 1e-12);
        assert!(si.max_deviation < 1e-12);
    }
}

proptest! {
    #[test]
    fn density_is_even(ell in 1u32..6, k in 0.0f64..50.0) {
        let lv = level(ell);
        prop_assert_eq!(spectral_density(&lv, k), spectral_density(&lv, -k));
    }

    #[test]
    fn density_is_negative(ell in 1u32..6, k in -50.0f64..50.0) {
        prop_assert!(spectral_density(&level(ell), k) < 0.0);
    }

    #[test]
    fn scattering_energy_is_above_edge(ell in 1u32..5, k in 0.0f64..5.0) {
        let s = scattering_state(&level(ell), k);
        prop_assert!((s.energy - (k * k + f64::from(ell * ell))).abs() < 1e-12);
    }
}
