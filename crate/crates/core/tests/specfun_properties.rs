use std::f64::consts::PI;

use proptest::prelude::*;
use tunneling::specfun::{
    digamma, gamma, gauss2f1, integrate, ln_gamma, param_derivative_integrals, Interval, QuadratureSpec,
};

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.5f64..8.0) {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        prop_assert!((lhs / rhs - 1.0).abs() < 1e-12, "x = {x}: {lhs} vs {rhs}");
    }

    #[test]
    fn ln_gamma_agrees_with_gamma(x in 0.1f64..30.0) {
        let direct = gamma(x).unwrap().ln();
        prop_assert!((ln_gamma(x).unwrap() - direct).abs() < 1e-12 * direct.abs().max(1.0));
    }

    #[test]
    fn digamma_is_log_gamma_slope(x in 0.3f64..20.0) {
        let h = 1e-5;
        let fd = (ln_gamma(x + h).unwrap() - ln_gamma(x - h).unwrap()) / (2.0 * h);
        prop_assert!((digamma(x).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn digamma_recurrence(x in 0.1f64..15.0) {
        let lhs = digamma(x + 1.0).unwrap();
        prop_assert!((lhs - digamma(x).unwrap() - 1.0 / x).abs() < 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn hypergeometric_matches_euler_integral(s in 0.0f64..2.0) {
        // F(1, b; c; x) = (c − 1) ∫₀¹ (1 − t)^{c−2} (1 − xt)^{−b} dt  with b = s+3/2, c = s+2
        let (b, c, x) = (s + 1.5, s + 2.0, 0.75);
        let euler = (c - 1.0)
            * integrate(|t| (1.0 - t).powf(c - 2.0) * (1.0 - x * t).powf(-b), Interval::Finite(0.0, 1.0), &QuadratureSpec::default())
                .unwrap();
        let series = gauss2f1(1.0, b, c, x).unwrap();
        prop_assert!((series / euler - 1.0).abs() < 1e-10);
    }
}

#[test]
fn gamma_reflection() {
    for x in [0.25, 0.5, 0.75] {
        let lhs = gamma(x).unwrap() * gamma(1.0 - x).unwrap();
        let rhs = PI / (PI * x).sin();
        assert!((lhs / rhs - 1.0).abs() < 1e-10, "x = {x}");
    }
}

#[test]
fn tabulated_hypergeometric() {
    assert!((gauss2f1(1.0, 1.5, 2.0, 0.75).unwrap() - 8.0 / 3.0).abs() < 1e-10);
}

#[test]
fn derivative_pieces_match_closed_forms() {
    let p = param_derivative_integrals(&QuadratureSpec::default()).unwrap();
    let ln2 = 2f64.ln();
    assert!((p.i1 - 8.0 / 3.0).abs() < 1e-8);
    assert!((p.i2 - 32.0 / 3.0 * (2.0f64 / 3.0).ln()).abs() < 1e-8);
    assert!((p.i3 - (-16.0 / 3.0 + 32.0 / 3.0 * ln2)).abs() < 1e-8);
    assert!((p.sum() - 0.401_942_106_152_329_2).abs() < 1e-8);
}

#[test]
fn derivative_against_finite_difference_in_s() {
    let h = 1e-4;
    let f = |s: f64| gauss2f1(1.0, s + 1.5, s + 2.0, 0.75).unwrap();
    let fd = (f(h) - f(-h)) / (2.0 * h);
    let p = param_derivative_integrals(&QuadratureSpec::default()).unwrap();
    assert!((fd - p.sum()).abs() < 1e-5, "{fd} vs {}", p.sum());
}
