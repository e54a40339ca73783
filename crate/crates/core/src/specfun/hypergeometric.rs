//! Gauss hypergeometric series and the parameter derivative used by the
//! closed-form regularized zeta function.

use super::quadrature::{integrate_detailed, Interval, QuadratureSpec};
use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// ₂F₁(a, b; c; x) for |x| < 1 by direct summation of the series.
pub fn gauss2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64> {
    gauss2f1_with(a, b, c, x, DEFAULT_REL_TOL, DEFAULT_MAX_TERMS)
}

pub fn gauss2f1_with(a: f64, b: f64, c: f64, x: f64, rel_tol: f64, max_terms: usize) -> Result<f64> {
    if c <= 0.0 && c == c.round() {
        return Err(Error::Pole { function: "gauss2f1", x: c });
    }
    if !(x.abs() < 1.0) {
        return Err(Error::Domain(format!("hypergeometric series needs |x| < 1, got {x}")));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    // geometric bound on the remaining tail once the term ratio has settled near |x|
    let tail_factor = 1.0 / (1.0 - x.abs());
    for n in 0..max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            return Ok(sum);
        }
        let ratio = ((a + nf + 1.0) * (b + nf + 1.0) / ((c + nf + 1.0) * (nf + 2.0))).abs();
        if ratio <= 1.0 && term.abs() * tail_factor <= rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNonConvergence {
        partial_sum: sum,
        terms: max_terms,
    })
}

/// The three pieces of ∂/∂s F(s + 3/2, 1; s + 2; 3/4) at s = 0, obtained by
/// differentiating the Euler integral representation under the integral sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamDerivative {
    /// ∫₀¹ (1 − 3t/4)^{−3/2} dt
    pub i1: f64,
    /// ∫₀¹ (1 − 3t/4)^{−3/2} ln(1 − t) dt
    pub i2: f64,
    /// −∫₀¹ (1 − 3t/4)^{−3/2} ln(1 − 3t/4) dt
    pub i3: f64,
    pub error_estimate: f64,
}

impl ParamDerivative {
    pub fn sum(&self) -> f64 {
        self.i1 + self.i2 + self.i3
    }
}

fn weight(t: f64) -> f64 {
    (1.0 - 0.75 * t).powf(-1.5)
}

// Width of the end piece of I₂ handled by series.
const LOG_TAIL_WIDTH: f64 = 1e-3;

/// ∫_{1−ε}^{1} (1 − 3t/4)^{−3/2} ln(1 − t) dt.
///
/// With u = 1 − t the weight is 8(1 + 3u)^{−3/2}; its binomial series is
/// integrated term by term against ln u.
fn log_tail(eps: f64) -> f64 {
    let ln_eps = eps.ln();
    let mut coeff = 8.0; // 8 · C(−3/2, n) · 3ⁿ
    let mut total = 0.0;
    for n in 0..200 {
        let np1 = n as f64 + 1.0;
        let moment = eps.powf(np1) / np1 * (ln_eps - 1.0 / np1);
        let term = coeff * moment;
        total += term;
        if term.abs() < 1e-18 * total.abs() {
            break;
        }
        coeff *= (-1.5 - n as f64) / np1 * 3.0;
    }
    total
}

pub fn param_derivative_integrals(spec: &QuadratureSpec) -> Result<ParamDerivative> {
    let q1 = integrate_detailed(weight, Interval::Finite(0.0, 1.0), spec)?;
    let q2 = integrate_detailed(
        |t| weight(t) * (1.0 - t).ln(),
        Interval::Finite(0.0, 1.0 - LOG_TAIL_WIDTH),
        spec,
    )?;
    let i2 = q2.value + log_tail(LOG_TAIL_WIDTH);
    let q3 = integrate_detailed(|t| -weight(t) * (1.0 - 0.75 * t).ln(), Interval::Finite(0.0, 1.0), spec)?;
    Ok(ParamDerivative {
        i1: q1.value,
        i2,
        i3: q3.value,
        error_estimate: q1.error_estimate + q2.error_estimate + q3.error_estimate,
    })
}

/// ∂/∂s F(s + 3/2, 1; s + 2; 3/4) at s = 0 by quadrature.
pub fn f_param_derivative_at_zero() -> Result<f64> {
    param_derivative_integrals(&QuadratureSpec::default()).map(|p| p.sum())
}
