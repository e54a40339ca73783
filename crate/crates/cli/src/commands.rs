use std::f64::consts::PI;

use rayon::prelude::*;
use serde_json::{json, Map, Value};
use tunneling::dilutegas::{compare_with_oracle, level_energies, transition_amplitude, validity_diagnostic};
use tunneling::instanton::{
    classical_action, classical_action_quadrature, profile, profile_velocity, stability_potential, zero_mode,
    DoubleWellParams, InstantonConfig,
};
use tunneling::oracle::{
    box_reduced_ratio_detailed, default_box_points, discretize_fn, gelfand_yaglom_ratio, lowest_eigenvalues, GridSpec,
};
use tunneling::specfun::{integrate_detailed, Interval, QuadratureSpec};
use tunneling::susyqm::{
    bound_energy, eigen_residual, integrated_density, o_potential, scattering_state, spectral_density, SusyLevel,
};
use tunneling::zetadet::{
    harmonic_amplitude_with, reduced_ratio_q, reduced_ratio_r_with, truncated_mode_product,
    zeta_r_prime0_with, zeta_r_with, AmplitudeForm, DerivativeMethod, ZetaMethod,
};
use tunneling::Error;

use crate::report::{rounding, Report, Table};
use crate::{Cli, Command};

pub(crate) fn dispatch(cli: &Cli) -> Report {
    let spec = match cli.tol {
        Some(t) => QuadratureSpec::default().with_tolerance(t),
        None => QuadratureSpec::default(),
    };
    let (name, mut inputs) = inputs(&cli.command);
    if let Some(t) = cli.tol {
        inputs.insert("tol".into(), json!(t));
    }
    let mut report = Report::new(name, inputs);
    let outcome = match &cli.command {
        Command::Action(a) => action(&mut report, a.omega, &spec),
        Command::Profile(a) => profile_cmd(&mut report, a.omega, a.tau, a.tau_c),
        Command::Spectrum(a) => spectrum(&mut report, a, &spec),
        Command::Zeta(a) => zeta(&mut report, a.ell, a.s, &spec),
        Command::DetRatio(a) => det_ratio(&mut report, a, &spec),
        Command::Oscillator(a) => oscillator(&mut report, a.nu, a.t, a.modes),
        Command::Splitting(a) => splitting(&mut report, a),
        Command::Sweep(a) => sweep(&mut report, a.omega_min, a.omega_max, a.omega_step),
    };
    match outcome {
        Ok(()) => report,
        Err(e) => report.failed(error_kind(&e), e.to_string()),
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "pole",
        Error::Domain(_) => "domain",
        Error::SeriesNonConvergence { .. } => "series_non_convergence",
        Error::Quadrature { .. } => "quadrature",
        Error::Ode { .. } => "ode",
        Error::Eigen(_) => "eigen",
        Error::NotIsolated { .. } => "not_isolated",
        Error::Unresolved { .. } => "unresolved",
    }
}

fn inputs(cmd: &Command) -> (&'static str, Map<String, Value>) {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        if !v.is_null() {
            m.insert(k.to_string(), v);
        }
    };
    let name = match cmd {
        Command::Action(a) => {
            put("omega", json!(a.omega));
            "action"
        }
        Command::Profile(a) => {
            put("omega", json!(a.omega));
            put("tau", json!(a.tau));
            put("tau_c", json!(a.tau_c));
            "profile"
        }
        Command::Spectrum(a) => {
            put("ell", json!(a.ell));
            put("k", json!(a.k));
            put("L", json!(a.half_width));
            put("N", json!(a.points));
            "spectrum"
        }
        Command::Zeta(a) => {
            put("ell", json!(a.ell));
            put("s", json!(a.s));
            "zeta"
        }
        Command::DetRatio(a) => {
            put("ell", json!(a.ell));
            put("omega", json!(a.omega));
            put("L", json!(a.half_width));
            put("N", json!(a.points));
            "det-ratio"
        }
        Command::Oscillator(a) => {
            put("nu", json!(a.nu));
            put("T", json!(a.t));
            put("N", json!(a.modes));
            "oscillator"
        }
        Command::Splitting(a) => {
            put("omega", json!(a.omega));
            put("with_oracle", json!(a.with_oracle));
            put("T", json!(a.t));
            put("L", json!(a.half_width));
            put("N", json!(a.points));
            "splitting"
        }
        Command::Sweep(a) => {
            put("omega_min", json!(a.omega_min));
            put("omega_max", json!(a.omega_max));
            put("omega_step", json!(a.omega_step));
            "sweep"
        }
    };
    (name, m)
}

fn action(r: &mut Report, omega: f64, spec: &QuadratureSpec) -> Result<(), Error> {
    let p = DoubleWellParams::new(omega)?;
    r.exact("s_e0", classical_action(&p), "S0 = 2w/3");
    let q = classical_action_quadrature(&InstantonConfig::centered(p), spec)?;
    r.push("s_e0", q.value, "S0 = int dtau xdot^2", "integrated", q.error_estimate);
    Ok(())
}

fn profile_cmd(r: &mut Report, omega: f64, tau: f64, tau_c: f64) -> Result<(), Error> {
    let p = DoubleWellParams::new(omega)?;
    let c = InstantonConfig::new(p, tau_c);
    r.exact("x_c", profile(&c, tau), "x_c = tanh(w(tau-tau_c)/2)");
    r.exact("xdot_c", profile_velocity(&c, tau), "xdot_c = (w/2) sech^2(w(tau-tau_c)/2)");
    r.exact("zero_mode", zero_mode(&c, tau), "x1 = S0^(-1/2) xdot_c");
    r.exact(
        "stability_potential",
        stability_potential(&p, tau - tau_c),
        "V''(x_c) = w^2 - (3w^2/2) sech^2(w tau/2)",
    );
    Ok(())
}

fn spectrum(r: &mut Report, a: &crate::SpectrumArgs, spec: &QuadratureSpec) -> Result<(), Error> {
    let lv = SusyLevel::new(a.ell)?;
    let ell = a.ell;
    let l2 = f64::from(ell * ell);
    let grid = GridSpec::stability(a.half_width, a.points)?;
    let count = (ell as usize + 1).min(a.points);
    let sys = lowest_eigenvalues(&discretize_fn(|z| o_potential(ell, z), &grid), count)?;
    let h = grid.spacing();
    for m in 0..ell {
        r.exact(format!("bound_energy[{m}]"), bound_energy(&lv, m)?, "E_m = l^2 - (l-m)^2");
        // O(h²) discretisation scale
        r.push(
            format!("grid_eigenvalue[{m}]"),
            sys.eigenvalues[m as usize],
            "E_m = l^2 - (l-m)^2",
            "oracle",
            l2 * l2 * h * h,
        );
    }
    r.exact("continuum_edge", l2, "E = k^2 + l^2");
    if let Some(&first) = sys.eigenvalues.get(ell as usize) {
        r.push(format!("grid_eigenvalue[{ell}]"), first, "E >= l^2 (box continuum)", "oracle", l2 * l2 * h * h);
    }
    let sum = integrate_detailed(|k| spectral_density(&lv, k), Interval::Real, spec)?;
    r.push("density_sum_rule", sum.value, "int rho_r dk = -l", "integrated", sum.error_estimate);
    if let Some(k) = a.k {
        let state = scattering_state(&lv, k);
        r.exact("scattering_energy", k * k + l2, "E = k^2 + l^2");
        let samples: Vec<f64> = (0..=40).map(|i| -5.0 + 0.25 * f64::from(i)).collect();
        r.push(
            "scattering_eigen_residual",
            eigen_residual(&lv, &state, &samples),
            "O_l phi = (k^2 + l^2) phi",
            "closed_form",
            0.0,
        );
        let closed = spectral_density(&lv, k);
        r.exact("density", closed, "rho_r = -(1/pi) sum_n n/(k^2+n^2)");
        let integrated = integrated_density(&lv, k, spec)?;
        r.push(
            "density",
            integrated,
            "rho_r = int (|phi_k|^2 - 1/2pi) dz",
            "integrated",
            (integrated - closed).abs().max(spec.abs_tol),
        );
    }
    Ok(())
}

fn zeta(r: &mut Report, ell: u32, s: f64, spec: &QuadratureSpec) -> Result<(), Error> {
    let formula = "zeta_r(s) = sum E_m^-s + int rho_r (k^2+l^2)^-s dk";
    if ell == 2 {
        let z = zeta_r_with(ell, s, ZetaMethod::ClosedForm, spec)?;
        r.push(
            "zeta_r",
            z.value,
            "zeta_r(s) = 3^-s - A(s) - B(s) F(1, s+3/2; s+2; 3/4)",
            z.method.as_str(),
            z.error_estimate,
        );
    }
    let z = zeta_r_with(ell, s, ZetaMethod::KIntegral, spec)?;
    r.push("zeta_r", z.value, formula, z.method.as_str(), z.error_estimate);
    if s > 0.0 {
        let z = zeta_r_with(ell, s, ZetaMethod::HeatKernelMellin, spec)?;
        r.push(
            "zeta_r",
            z.value,
            "zeta_r(s) = (1/Gamma(s)) int mu^(s-1) tr[e^-mu O - e^-mu P] dmu",
            z.method.as_str(),
            z.error_estimate,
        );
    }
    if s == 0.0 {
        let d = zeta_r_prime0_with(ell, DerivativeMethod::LogIntegral, spec)?;
        r.push(
            "zeta_r_prime_at_zero",
            d.value,
            "zeta_r'(0) = -sum ln E_m - int rho_r ln(k^2+l^2) dk",
            d.method.as_str(),
            d.error_estimate,
        );
        if ell == 2 {
            let d = zeta_r_prime0_with(ell, DerivativeMethod::Hypergeometric, spec)?;
            r.push("zeta_r_prime_at_zero", d.value, "zeta_r'(0) = 4 ln 2 + ln 3", d.method.as_str(), d.error_estimate);
        }
    }
    Ok(())
}

fn det_ratio(r: &mut Report, a: &crate::DetRatioArgs, spec: &QuadratureSpec) -> Result<(), Error> {
    let q = reduced_ratio_q(a.ell, spec)?;
    let z0 = zeta_r_with(a.ell, 0.0, ZetaMethod::KIntegral, spec)?;
    r.push("zeta_at_zero", q.zeta_at_zero, "zeta_r(0) = -1", z0.method.as_str(), z0.error_estimate);
    r.push(
        "zeta_prime_at_zero",
        q.zeta_prime_at_zero,
        "zeta_r'(0) = -sum ln E_m - int rho_r ln(k^2+l^2) dk",
        "log_integral",
        q.error_estimate / q.q_value,
    );
    r.push("q_value", q.q_value, "Q_l = Det'O_l / Det P_l = exp(-zeta_r'(0))", "integrated", q.error_estimate);
    if let Some(omega) = a.omega {
        if a.ell != 2 {
            return Err(Error::Domain("the double-well ratio R(omega) uses ell = 2".into()));
        }
        let p = DoubleWellParams::new(omega)?;
        let rr = reduced_ratio_r_with(&p, spec)?;
        r.push(
            "r_value",
            rr.r_value.expect("omega given"),
            "R = beta^zeta_r(0) Q_2, beta = w^2/4",
            "scaling_law",
            rr.error_estimate,
        );
        r.exact("r_value", 1.0 / (12.0 * omega * omega), "R = 1/(12w^2)");
        r.exact("beta", p.beta(), "beta = w^2/4");
    }
    if let Some(half_width) = a.half_width {
        let points = a.points.unwrap_or_else(|| default_box_points(half_width));
        let b = box_reduced_ratio_detailed(a.ell, half_width, points)?;
        r.push("box_reduced_ratio", b.value, "Q_l = lim Det_box O_l / (lambda0 Det_box P_l)", "oracle", (b.fine - b.coarse).abs() / 3.0);
        r.push("box_lambda0", b.lambda0, "lambda0 -> 0 as L -> inf", "oracle", 0.0);
        r.push("box_lambda1", b.lambda1, "lambda1 -> first excited level", "oracle", 0.0);
    }
    Ok(())
}

fn oscillator(r: &mut Report, nu: f64, t: f64, modes: usize) -> Result<(), Error> {
    let exact = harmonic_amplitude_with(nu, t, AmplitudeForm::Exact)?;
    r.exact("amplitude", exact, "sqrt(nu/pi) (2 sinh nu T)^-1/2");
    let asym = harmonic_amplitude_with(nu, t, AmplitudeForm::Asymptotic)?;
    r.push(
        "amplitude",
        asym,
        "sqrt(nu/pi) e^(-nu T/2) (1 + e^(-2 nu T)/2)",
        "asymptotic",
        (asym - exact).abs(),
    );
    let prod = truncated_mode_product(nu, t, modes)?;
    // tail of the log-product ~ ν²T²/(2π²N)
    let tail = prod * (nu * t).powi(2) / (2.0 * PI * PI * modes as f64);
    r.push("amplitude", prod, "(2 pi T)^-1/2 prod_j (1 + nu^2 T^2/(j^2 pi^2))^-1/2", "mode_product", tail);
    let x = nu * t;
    let sinh_ratio = if x == 0.0 { 1.0 } else { x.sinh() / x };
    r.exact("det_ratio", sinh_ratio, "Det[-d^2+nu^2]/Det[-d^2] = sinh(nu T)/(nu T)");
    let gy = gelfand_yaglom_ratio(|_| nu * nu, |_| 0.0, t)?;
    r.push(
        "det_ratio",
        gy,
        "Det[-d^2+nu^2]/Det[-d^2] = sinh(nu T)/(nu T)",
        "gelfand_yaglom",
        (gy - sinh_ratio).abs(),
    );
    let bare = (nu / PI).sqrt() * (-0.5 * x).exp();
    r.push(
        "correction_coefficient",
        (exact / bare - 1.0) / (-2.0 * x).exp(),
        "sqrt(nu/pi) e^(-nu T/2) (1 + c e^(-2 nu T)), c = 1/2",
        "closed_form",
        rounding(exact / bare) / (-2.0 * x).exp(),
    );
    Ok(())
}

fn splitting(r: &mut Report, a: &crate::SplittingArgs) -> Result<(), Error> {
    let p = DoubleWellParams::new(a.omega)?;
    let rep = if a.with_oracle {
        let mut grid = GridSpec::for_double_well(&p);
        if a.half_width.is_some() || a.points.is_some() {
            grid = GridSpec::physical(
                a.half_width.unwrap_or(grid.half_width()),
                a.points.unwrap_or(grid.points()),
            )?;
        }
        compare_with_oracle(&p, &grid)?
    } else {
        level_energies(&p)
    };
    r.exact("s_e0", rep.action(), "S0 = 2w/3");
    r.exact("d", rep.d, "d = sqrt(6/pi) sqrt(S0) e^-S0");
    r.exact("e0_inst", rep.e0_inst, "E0 = w/2 - w d");
    r.exact("e1_inst", rep.e1_inst, "E1 = w/2 + w d");
    r.exact("delta_e_inst", rep.delta_e_inst(), "dE = 4w sqrt(w/pi) e^(-2w/3)");
    if let (Some(e0), Some(e1), Some(ratio), Some(points)) = (rep.e0_oracle, rep.e1_oracle, rep.ratio, rep.oracle_points) {
        let de = e1 - e0;
        let tol = 1e-3 * de;
        r.push("e0_oracle", e0, "E0 of -d^2/2 + V", "oracle", tol);
        r.push("e1_oracle", e1, "E1 of -d^2/2 + V", "oracle", tol);
        r.push("delta_e_oracle", de, "E1 - E0 of -d^2/2 + V", "oracle", tol);
        r.push("ratio", ratio, "dE_oracle / dE_inst", "oracle", 1e-3 * ratio);
        r.push("oracle_points", points as f64, "grid points after refinement", "oracle", 0.0);
    }
    if let Some(t) = a.t {
        r.exact("validity_diagnostic", validity_diagnostic(&p, t), "w T d");
        let odd = transition_amplitude(&p, t, false, None)?;
        r.exact("amplitude_opposite", odd, "sqrt(w/pi) e^(-wT/2) sinh(w T d)");
        let even = transition_amplitude(&p, t, true, None)?;
        r.exact("amplitude_same", even, "sqrt(w/pi) e^(-wT/2) cosh(w T d)");
    }
    Ok(())
}

pub(crate) const SWEEP_HEADER: [&str; 6] = ["omega", "delta_e_inst", "delta_e_oracle", "ratio", "d", "s_e0"];

fn sweep(r: &mut Report, lo: f64, hi: f64, step: f64) -> Result<(), Error> {
    let omegas: Vec<f64> = if hi < lo {
        Vec::new()
    } else {
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| lo + i as f64 * step).collect()
    };
    let rows = omegas
        .par_iter()
        .map(|&omega| {
            let p = DoubleWellParams::new(omega)?;
            compare_with_oracle(&p, &GridSpec::for_double_well(&p))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table {
        header: SWEEP_HEADER.to_vec(),
        rows: Vec::with_capacity(rows.len()),
    };
    for rep in &rows {
        let tag = format!("[omega={}]", rep.omega);
        r.exact(format!("delta_e_inst{tag}"), rep.delta_e_inst(), "dE = 4w sqrt(w/pi) e^(-2w/3)");
        let de = rep.delta_e_oracle();
        if let (Some(de), Some(ratio)) = (de, rep.ratio) {
            r.push(format!("delta_e_oracle{tag}"), de, "E1 - E0 of -d^2/2 + V", "oracle", 1e-3 * de);
            r.push(format!("ratio{tag}"), ratio, "dE_oracle / dE_inst", "oracle", 1e-3 * ratio);
        }
        r.exact(format!("d{tag}"), rep.d, "d = sqrt(6/pi) sqrt(S0) e^-S0");
        r.exact(format!("s_e0{tag}"), rep.action(), "S0 = 2w/3");
        table.rows.push(vec![
            Some(rep.omega),
            Some(rep.delta_e_inst()),
            de,
            rep.ratio,
            Some(rep.d),
            Some(rep.action()),
        ]);
    }
    r.table = Some(table);
    Ok(())
}
