use std::f64::consts::PI;

use proptest::prelude::*;
use tunneling::dilutegas::*;
use tunneling::instanton::DoubleWellParams;
use tunneling::oracle::GridSpec;

fn dw(omega: f64) -> DoubleWellParams {
    DoubleWellParams::new(omega).unwrap()
}

proptest! {
    #[test]
    fn truncated_series_remainder_is_bounded(omega in 0.5f64..6.0, x in 1e-3f64..5.0, n in 1usize..50, same in any::<bool>()) {
        let p = dw(omega);
        let t = x / (omega * instanton_density(&p));
        let x = validity_diagnostic(&p, t);
        let bare = (omega / PI).sqrt() * (-0.5 * omega * t).exp();
        let full = transition_amplitude(&p, t, same, None).unwrap() / bare;
        let part = transition_amplitude(&p, t, same, Some(n)).unwrap() / bare;
        // first omitted power
        let power = if same { 2 * n } else { 2 * n + 1 } as i32;
        let first_omitted = (1..=power).fold(1.0, |acc, j| acc * x / f64::from(j));
        prop_assert!(full - part >= -1e-15 * full);
        // omitted terms shrink at least geometrically with ratio q once q < 1
        let q = x * x / f64::from((power + 1) * (power + 2));
        if q < 1.0 {
            prop_assert!(full - part <= first_omitted / (1.0 - q) + 1e-14 * full);
        }
        prop_assert!(full - part >= first_omitted * (1.0 - 1e-12) - 1e-14 * full);
        if n >= 40 { prop_assert!((full - part).abs() < 1e-12 * full); }
    }

    #[test]
    fn hyperbolic_identity(omega in 0.5f64..20.0, t in 0.01f64..50.0) {
        let p = dw(omega);
        let bare = (omega / PI).sqrt() * (-0.5 * omega * t).exp();
        prop_assume!(bare > 1e-150);
        let c = transition_amplitude(&p, t, true, None).unwrap() / bare;
        let s = transition_amplitude(&p, t, false, None).unwrap() / bare;
        prop_assert!((c * c - s * s - 1.0).abs() < 1e-12 * c * c);
    }

    #[test]
    fn levels_straddle_oscillator_ground(omega in 0.01f64..60.0) {
        let r = level_energies(&dw(omega));
        prop_assert!(r.e1_inst > r.e0_inst);
        prop_assert!(r.d > 0.0);
        prop_assert!((r.delta_e_inst() - 2.0 * omega * r.d).abs() <= 1e-14 * r.delta_e_inst());
        prop_assert!((0.5 * (r.e0_inst + r.e1_inst) - 0.5 * omega).abs() <= 1e-14 * omega);
    }

    #[test]
    fn splitting_decreases_past_turning_point(a in 2.25f64..60.0, step in 1e-3f64..5.0) {
        let lo = level_energies(&dw(a)).delta_e_inst();
        let hi = level_energies(&dw(a + step)).delta_e_inst();
        prop_assert!(hi < lo);
    }

    #[test]
    fn volume_recurrence(j in 0u32..30, omega in 0.1f64..5.0, t in 0.1f64..5.0) {
        let p = dw(omega);
        let next = collective_volume(j + 1, &p, t);
        let here = collective_volume(j, &p, t);
        prop_assert!((next - here * omega * t / f64::from(j + 1)).abs() <= 1e-12 * next);
    }
}

#[test]
fn density_forms_agree() {
    for omega in [0.5, 3.0, 10.0, 40.0] {
        let direct = 2.0 * (omega / PI).sqrt() * (-2.0 * omega / 3.0).exp();
        assert!((instanton_density(&dw(omega)) / direct - 1.0).abs() < 1e-14);
    }
}

#[test]
fn oracle_ratio_approaches_one() {
    let ratios: Vec<f64> = [8.0, 10.0, 12.0]
        .iter()
        .map(|&w| {
            let p = dw(w);
            compare_with_oracle(&p, &GridSpec::for_double_well(&p)).unwrap().ratio.unwrap()
        })
        .collect();
    assert!((0.75..=1.05).contains(&ratios[1]), "{ratios:?}");
    assert!(ratios.windows(2).all(|w| (w[1] - 1.0).abs() <= (w[0] - 1.0).abs()), "{ratios:?}");
}

#[test]
fn outside_validity_the_ratio_is_far_from_one() {
    let p = dw(3.0);
    let r = compare_with_oracle(&p, &GridSpec::for_double_well(&p)).unwrap();
    assert!((r.delta_e_inst() - 1.587).abs() < 1e-3);
    assert!((r.ratio.unwrap() - 1.0).abs() > 0.3);
}
