use proptest::prelude::*;
use tunneling::instanton::DoubleWellParams;
use tunneling::oracle::*;

#[test]
fn harmonic_control_converges_at_second_order() {
    let errs: Vec<f64> = [400, 801, 1603]
        .iter()
        .map(|&n| {
            let spec = GridSpec::physical(10.0, n).unwrap();
            let sys = physical_levels(|x| 2.0 * x * x, &spec, 1).unwrap();
            (sys.eigenvalues[0] - 1.0).abs()
        })
        .collect();
    for w in errs.windows(2) {
        let rate = w[0] / w[1];
        assert!((3.6..4.4).contains(&rate), "{errs:?}");
    }
    assert!(errs[0] < 1e-3);
}

#[test]
fn box_ratio_error_decays_geometrically() {
    let errs: Vec<f64> = [6.0, 8.0, 10.0, 12.0]
        .iter()
        .map(|&l| (box_reduced_ratio(2, l, default_box_points(l)).unwrap() * 48.0 - 1.0).abs())
        .collect();
    let first = errs[1] / errs[0];
    assert!(first < 0.5, "{errs:?}");
    for w in errs.windows(2) {
        // each step of ΔL = 2 shrinks the error by at least the first ratio
        // up to a factor two
        assert!(w[1] / w[0] <= 2.0 * first, "{errs:?}");
    }
}

#[test]
fn box_ratio_other_levels() {
    let q3 = box_reduced_ratio(3, 10.0, default_box_points(10.0)).unwrap();
    assert!((q3 * 360.0 - 1.0).abs() < 1e-3, "{q3}");
}

#[test]
fn zero_mode_isolation_is_checked() {
    // spacing wider than the well: the zero mode is not resolved
    let err = box_reduced_ratio(1, 20.0, 16).unwrap_err();
    assert!(matches!(err, tunneling::Error::NotIsolated { .. }), "{err:?}");
}

#[test]
fn parity_of_lowest_pair() {
    for omega in [4.0, 10.0, 14.0] {
        let p = DoubleWellParams::new(omega).unwrap();
        let (even, odd) = splitting_parities(&p, &GridSpec::for_double_well(&p)).unwrap();
        assert!(even > 0.999 && odd < -0.999, "omega {omega}: {even} {odd}");
    }
}

#[test]
fn unresolved_grid_is_reported() {
    let p = DoubleWellParams::new(10.0).unwrap();
    let err = physical_splitting(&p, &GridSpec::physical(3.0, 16).unwrap()).unwrap_err();
    assert!(matches!(err, tunneling::Error::Unresolved { .. }), "{err:?}");
}

#[test]
fn eigenvectors_are_orthonormal_eigenpairs() {
    let spec = GridSpec::stability(8.0, 300).unwrap();
    let op = discretize_fn(|z| tunneling::susyqm::o_potential(3, z), &spec);
    let sys = lowest_eigenpairs(&op, 4).unwrap();
    let vecs = sys.eigenvectors.unwrap();
    for (i, v) in vecs.iter().enumerate() {
        let n = v.len();
        let mut res = 0.0f64;
        for j in 0..n {
            let mut tv = op.diagonal[j] * v[j];
            if j > 0 {
                tv += op.off_diagonal[j - 1] * v[j - 1];
            }
            if j + 1 < n {
                tv += op.off_diagonal[j] * v[j + 1];
            }
            res = res.max((tv - sys.eigenvalues[i] * v[j]).abs());
        }
        assert!(res < 1e-8, "residual {res}");
        for (k, w) in vecs.iter().enumerate() {
            let dot: f64 = v.iter().zip(w).map(|(a, b)| a * b).sum();
            let expected = if i == k { 1.0 } else { 0.0 };
            assert!((dot - expected).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gelfand_yaglom_matches_sinh(nu in 0.05f64..4.0, t in 0.1f64..10.0) {
        let x = nu * t;
        prop_assume!(x <= 20.0);
        let r = gelfand_yaglom_ratio(|_| nu * nu, |_| 0.0, t).unwrap();
        prop_assert!((r / (x.sinh() / x) - 1.0).abs() < 1e-8);
    }

    #[test]
    fn constant_shift_moves_spectrum(c in -5.0f64..5.0) {
        let spec = GridSpec::stability(3.0, 64).unwrap();
        let base = lowest_eigenvalues(&discretize_fn(|x| x * x, &spec), 5).unwrap();
        let shifted = lowest_eigenvalues(&discretize_fn(|x| x * x + c, &spec), 5).unwrap();
        for (a, b) in base.eigenvalues.iter().zip(&shifted.eigenvalues) {
            prop_assert!((b - a - c).abs() < 1e-10);
        }
    }

    #[test]
    fn eigenvalues_are_ascending(n in 16usize..200, l in 0.5f64..20.0) {
        let spec = GridSpec::stability(l, n).unwrap();
        let sys = lowest_eigenvalues(&discretize_fn(|z| tunneling::susyqm::o_potential(2, z), &spec), 6).unwrap();
        prop_assert!(sys.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}
