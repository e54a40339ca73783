//! Zeta-regularized determinants of `O_ℓ` relative to `P_ℓ = −d²/dz² + ℓ²`,
//! the scaling law, and the harmonic-oscillator amplitude with its
//! mode-product factorisation.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::instanton::DoubleWellParams;
use crate::specfun::{
    digamma, gamma, gauss2f1, integrate_detailed, param_derivative_integrals, Interval, QuadratureSpec,
};
use crate::susyqm::{bound_energy, spectral_density, SusyLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZetaMethod {
    /// Gamma functions and `₂F₁(1, s+3/2; s+2; 3/4)`; `ℓ = 2` only.
    ClosedForm,
    /// Bound-state sum plus `∫ ρ_r(k) (k² + ℓ²)^{−s} dk`.
    KIntegral,
    /// Mellin transform of the subtracted heat trace.
    HeatKernelMellin,
}

impl ZetaMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ZetaMethod::ClosedForm => "closed_form",
            ZetaMethod::KIntegral => "k_integral",
            ZetaMethod::HeatKernelMellin => "heat_kernel_mellin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaEvaluation {
    pub ell: u32,
    pub s: f64,
    pub value: f64,
    pub method: ZetaMethod,
    /// Achieved absolute error estimate (quadrature or series).
    pub error_estimate: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivativeMethod {
    /// `−Σ ln E_m − ∫ ρ_r(k) ln(k² + ℓ²) dk`
    LogIntegral,
    /// Derivative of the closed form through digamma and the parameter
    /// derivative of `₂F₁`; `ℓ = 2` only.
    Hypergeometric,
    /// Richardson-extrapolated central difference of the k-integral route.
    FiniteDifference,
}

impl DerivativeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DerivativeMethod::LogIntegral => "log_integral",
            DerivativeMethod::Hypergeometric => "hypergeometric",
            DerivativeMethod::FiniteDifference => "finite_difference",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaDerivative {
    pub ell: u32,
    pub value: f64,
    pub method: DerivativeMethod,
    pub error_estimate: f64,
}

/// Step for the s-derivative cross-check.
pub const FD_STEP: f64 = 1e-4;

fn bound_sum(lv: &SusyLevel, s: f64) -> f64 {
    (1..lv.ell())
        .map(|m| bound_energy(lv, m).unwrap().powf(-s))
        .sum()
}

fn zeta_k_integral(lv: &SusyLevel, s: f64, spec: &QuadratureSpec) -> Result<ZetaEvaluation> {
    if !(s > -0.5) {
        return Err(Error::Domain(format!("k-integral representation needs s > −1/2, got {s}")));
    }
    let l2 = (lv.ell() as f64).powi(2);
    let spec = spec.with_tail_exponent((2.0 + 2.0 * s).min(2.0));
    // even integrand: twice the half line
    let q = integrate_detailed(
        |k| spectral_density(lv, k) * (k * k + l2).powf(-s),
        Interval::UpperInfinite(0.0),
        &spec,
    )?;
    Ok(ZetaEvaluation {
        ell: lv.ell(),
        s,
        value: bound_sum(lv, s) + 2.0 * q.value,
        method: ZetaMethod::KIntegral,
        error_estimate: 2.0 * q.error_estimate,
    })
}

/// Prefactors `A(s)` and `B(s)` of the closed form
/// `ζ_r(s) = 3^{−s} − A(s) − B(s) F(1, s+3/2; s+2; 3/4)`.
fn closed_form_prefactors(s: f64) -> Result<(f64, f64)> {
    let c = 3.0 / PI.sqrt();
    let a = c * 2f64.powf(-(2.0 * s + 1.0)) * gamma(s + 0.5)? / gamma(s + 1.0)?;
    let b = c * 2f64.powf(-(2.0 * s + 3.0)) * gamma(s + 1.5)? / gamma(s + 2.0)?;
    Ok((a, b))
}

fn require_ell2(lv: &SusyLevel, what: &str) -> Result<()> {
    if lv.ell() != 2 {
        return Err(Error::Domain(format!("{what} is only available for ell = 2, got {}", lv.ell())));
    }
    Ok(())
}

fn zeta_closed_form(lv: &SusyLevel, s: f64) -> Result<ZetaEvaluation> {
    require_ell2(lv, "closed-form zeta")?;
    let (a, b) = closed_form_prefactors(s)?;
    let f = gauss2f1(1.0, s + 1.5, s + 2.0, 0.75)?;
    let value = 3f64.powf(-s) - a - b * f;
    Ok(ZetaEvaluation {
        ell: 2,
        s,
        value,
        method: ZetaMethod::ClosedForm,
        error_estimate: (b * f).abs() * crate::specfun::DEFAULT_REL_TOL,
    })
}

/// Subtracted heat trace `Σ_m e^{−E_m μ} + ∫ ρ_r(k) e^{−(k²+ℓ²)μ} dk`, with the
/// k-integral done by quadrature.
pub fn heat_trace(lv: &SusyLevel, mu: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(mu > 0.0) {
        return Err(Error::Domain(format!("heat trace needs mu > 0, got {mu}")));
    }
    let l2 = (lv.ell() as f64).powi(2);
    let discrete: f64 = (1..lv.ell()).map(|m| (-bound_energy(lv, m).unwrap() * mu).exp()).sum();
    let q = integrate_detailed(
        |k| spectral_density(lv, k) * (-(k * k + l2) * mu).exp(),
        Interval::UpperInfinite(0.0),
        spec,
    )?;
    Ok(discrete + 2.0 * q.value)
}

fn zeta_heat_kernel(lv: &SusyLevel, s: f64, spec: &QuadratureSpec) -> Result<ZetaEvaluation> {
    if !(s > 0.0) {
        return Err(Error::Domain(format!("Mellin representation needs s > 0, got {s}")));
    }
    let inner = QuadratureSpec {
        abs_tol: spec.abs_tol.min(1e-13),
        rel_tol: spec.rel_tol.min(1e-12),
        ..*spec
    };
    let outer = QuadratureSpec {
        abs_tol: spec.abs_tol.max(1e-11),
        rel_tol: spec.rel_tol.max(1e-11),
        ..*spec
    };
    // v = μ^s absorbs the μ^{s−1} weight: ζ = (1/Γ(s+1)) ∫₀^∞ h(v^{1/s}) dv
    let q = integrate_detailed(
        |v| {
            if v == 0.0 {
                return heat_trace(lv, f64::MIN_POSITIVE, &inner).unwrap_or(f64::NAN);
            }
            heat_trace(lv, v.powf(1.0 / s), &inner).unwrap_or(f64::NAN)
        },
        Interval::UpperInfinite(0.0),
        &outer,
    )?;
    let g = gamma(s + 1.0)?;
    Ok(ZetaEvaluation {
        ell: lv.ell(),
        s,
        value: q.value / g,
        method: ZetaMethod::HeatKernelMellin,
        error_estimate: q.error_estimate / g,
    })
}

/// Regularized zeta function `ζ_r(s) = ζ_{O_ℓ}(s) − ζ_{P_ℓ}(s)` by the chosen
/// route.
pub fn zeta_r_with(ell: u32, s: f64, method: ZetaMethod, spec: &QuadratureSpec) -> Result<ZetaEvaluation> {
    let lv = SusyLevel::new(ell)?;
    match method {
        ZetaMethod::KIntegral => zeta_k_integral(&lv, s, spec),
        ZetaMethod::ClosedForm => zeta_closed_form(&lv, s),
        ZetaMethod::HeatKernelMellin => zeta_heat_kernel(&lv, s, spec),
    }
}

/// `ζ_r(s)` through the k-integral, valid for every `ℓ` and `s > −1/2`.
pub fn zeta_r(ell: u32, s: f64) -> Result<ZetaEvaluation> {
    zeta_r_with(ell, s, ZetaMethod::KIntegral, &QuadratureSpec::default())
}

/// `ζ_r(s)` from the Mellin transform of the heat trace (`s > 0`).
pub fn heat_kernel_zeta_check(ell: u32, s: f64) -> Result<f64> {
    zeta_r_with(ell, s, ZetaMethod::HeatKernelMellin, &QuadratureSpec::default()).map(|z| z.value)
}

pub fn zeta_r_prime0_with(ell: u32, method: DerivativeMethod, spec: &QuadratureSpec) -> Result<ZetaDerivative> {
    let lv = SusyLevel::new(ell)?;
    match method {
        DerivativeMethod::LogIntegral => {
            let l2 = (ell as f64).powi(2);
            // ρ_r ln(k²+ℓ²) ~ ln k / k²: grade the tail a little harder
            let q = integrate_detailed(
                |k| spectral_density(&lv, k) * (k * k + l2).ln(),
                Interval::UpperInfinite(0.0),
                &spec.with_tail_exponent(1.5),
            )?;
            let bound: f64 = (1..ell).map(|m| bound_energy(&lv, m).unwrap().ln()).sum();
            Ok(ZetaDerivative {
                ell,
                value: -bound - 2.0 * q.value,
                method,
                error_estimate: 2.0 * q.error_estimate,
            })
        }
        DerivativeMethod::Hypergeometric => {
            require_ell2(&lv, "hypergeometric derivative route")?;
            // ζ_r′(0) = −ln 3 − A′(0) − B′(0) F(0) − B(0) F′(0), with
            // A′/A = −2 ln 2 + ψ(s+½) − ψ(s+1) and B′/B = −2 ln 2 + ψ(s+3/2) − ψ(s+2)
            let ln2 = 2f64.ln();
            let (a, b) = closed_form_prefactors(0.0)?;
            let da = a * (-2.0 * ln2 + digamma(0.5)? - digamma(1.0)?);
            let db = b * (-2.0 * ln2 + digamma(1.5)? - digamma(2.0)?);
            let f0 = gauss2f1(1.0, 1.5, 2.0, 0.75)?;
            let fp = param_derivative_integrals(spec)?;
            Ok(ZetaDerivative {
                ell,
                value: -3f64.ln() - da - db * f0 - b * fp.sum(),
                method,
                error_estimate: b * fp.error_estimate,
            })
        }
        DerivativeMethod::FiniteDifference => {
            let z = |s: f64| zeta_k_integral(&lv, s, spec).map(|e| e.value);
            let central = |h: f64| -> Result<f64> { Ok((z(h)? - z(-h)?) / (2.0 * h)) };
            let coarse = central(FD_STEP)?;
            let fine = central(0.5 * FD_STEP)?;
            Ok(ZetaDerivative {
                ell,
                value: (4.0 * fine - coarse) / 3.0,
                method,
                error_estimate: (fine - coarse).abs(),
            })
        }
    }
}

/// `ζ_r′(0)` by the log-weighted integral.
pub fn zeta_r_prime0(ell: u32) -> Result<f64> {
    zeta_r_prime0_with(ell, DerivativeMethod::LogIntegral, &QuadratureSpec::default()).map(|d| d.value)
}

/// `Det = exp(−ζ′(0))`
pub fn det_from_zeta(zeta_prime_at_zero: f64) -> f64 {
    (-zeta_prime_at_zero).exp()
}

/// `Det(βH) = β^{ζ_H(0)} Det H`
pub fn scale_determinant(beta: f64, zeta_at_zero: f64, det: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::Domain(format!("scale factor must be positive, got {beta}")));
    }
    Ok(beta.powf(zeta_at_zero) * det)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantRatio {
    pub ell: u32,
    /// `Det′ O_ℓ / Det P_ℓ`
    pub q_value: f64,
    pub omega: Option<f64>,
    /// `Det′[−∂² + V″(x_c)] / Det[−∂² + ω²]`, present with `omega`.
    pub r_value: Option<f64>,
    pub zeta_at_zero: f64,
    pub zeta_prime_at_zero: f64,
    pub error_estimate: f64,
}

/// `Q_ℓ = exp(−ζ_r′(0))` from the log-integral route.
pub fn reduced_ratio_q(ell: u32, spec: &QuadratureSpec) -> Result<DeterminantRatio> {
    let z0 = zeta_r_with(ell, 0.0, ZetaMethod::KIntegral, spec)?;
    let zp = zeta_r_prime0_with(ell, DerivativeMethod::LogIntegral, spec)?;
    let q = det_from_zeta(zp.value);
    Ok(DeterminantRatio {
        ell,
        q_value: q,
        omega: None,
        r_value: None,
        zeta_at_zero: z0.value,
        zeta_prime_at_zero: zp.value,
        error_estimate: q * zp.error_estimate,
    })
}

/// Reduced determinant ratio of the double-well stability operator against
/// the oscillator of frequency ω: `Q₂` rescaled by `β^{ζ_r(0)}`, `β = ω²/4`.
pub fn reduced_ratio_r_with(p: &DoubleWellParams, spec: &QuadratureSpec) -> Result<DeterminantRatio> {
    let base = reduced_ratio_q(2, spec)?;
    let r = scale_determinant(p.beta(), base.zeta_at_zero, base.q_value)?;
    let err = r * (base.error_estimate / base.q_value + p.beta().ln().abs() * 1e-12);
    Ok(DeterminantRatio {
        omega: Some(p.omega()),
        r_value: Some(r),
        error_estimate: err,
        ..base
    })
}

pub fn reduced_ratio_r(p: &DoubleWellParams) -> Result<DeterminantRatio> {
    reduced_ratio_r_with(p, &QuadratureSpec::default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmplitudeForm {
    /// `√(ν/π) (2 sinh νT)^{−1/2}`
    Exact,
    /// `√(ν/π) e^{−νT/2} (1 + ½ e^{−2νT})`
    Asymptotic,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(Error::Domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

/// ln of the oscillator amplitude `⟨0| e^{−HT} |0⟩`, evaluated without
/// forming `sinh` so large `νT` cannot overflow.
pub fn ln_harmonic_amplitude(nu: f64, t: f64) -> Result<f64> {
    check_positive("nu", nu)?;
    check_positive("T", t)?;
    let x = nu * t;
    // ln(2 sinh x) = x + ln(1 − e^{−2x})
    let ln_two_sinh = x + (-(-2.0 * x).exp()).ln_1p();
    Ok(0.5 * (nu / PI).ln() - 0.5 * ln_two_sinh)
}

pub fn harmonic_amplitude_with(nu: f64, t: f64, form: AmplitudeForm) -> Result<f64> {
    match form {
        AmplitudeForm::Exact => ln_harmonic_amplitude(nu, t).map(f64::exp),
        AmplitudeForm::Asymptotic => {
            check_positive("nu", nu)?;
            check_positive("T", t)?;
            let x = nu * t;
            Ok((nu / PI).sqrt() * (-0.5 * x).exp() * (1.0 + 0.5 * (-2.0 * x).exp()))
        }
    }
}

pub fn harmonic_amplitude(nu: f64, t: f64) -> Result<f64> {
    harmonic_amplitude_with(nu, t, AmplitudeForm::Exact)
}

/// Free-particle factor times the first `n` oscillator modes,
/// `(2πT)^{−1/2} Π_{j≤n} (1 + ν²T²/(j²π²))^{−1/2}`.
pub fn truncated_mode_product(nu: f64, t: f64, n: usize) -> Result<f64> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::Domain(format!("nu must be non-negative, got {nu}")));
    }
    check_positive("T", t)?;
    if n < 1 {
        return Err(Error::Domain("mode count must be at least 1".into()));
    }
    let z2 = (nu * t / PI).powi(2);
    let ln_prod: f64 = (1..=n).map(|j| (z2 / (j as f64).powi(2)).ln_1p()).sum();
    Ok((-0.5 * (2.0 * PI * t).ln() - 0.5 * ln_prod).exp())
}
