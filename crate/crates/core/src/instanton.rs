//! Classical layer of the double well `V(x) = (ω²/8)(x² − 1)²`: the
//! instanton `x_c(τ) = tanh(ω(τ − τ_c)/2)`, its action, zero mode and the
//! potential of the stability equation. Every derivative here is analytic.

use crate::error::{Error, Result};
use crate::specfun::{integrate_detailed, Interval, Quadrature, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleWellParams {
    omega: f64,
}

impl DoubleWellParams {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be positive and finite, got {omega}")));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Euclidean action of one instanton, `2ω/3`.
    pub fn action(&self) -> f64 {
        2.0 * self.omega / 3.0
    }

    /// Scale factor `ω²/4` relating the stability operator in τ to `O₂` in
    /// `z = ωτ/2`.
    pub fn beta(&self) -> f64 {
        self.omega * self.omega / 4.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstantonConfig {
    pub params: DoubleWellParams,
    pub tau_c: f64,
}

impl InstantonConfig {
    pub fn new(params: DoubleWellParams, tau_c: f64) -> Self {
        Self { params, tau_c }
    }

    pub fn centered(params: DoubleWellParams) -> Self {
        Self { params, tau_c: 0.0 }
    }

    fn phase(&self, tau: f64) -> f64 {
        0.5 * self.params.omega * (tau - self.tau_c)
    }
}

fn sech(y: f64) -> f64 {
    1.0 / y.cosh()
}

pub fn potential(p: &DoubleWellParams, x: f64) -> f64 {
    let w2 = p.omega * p.omega;
    let q = x * x - 1.0;
    w2 / 8.0 * q * q
}

/// V′(x) = (ω²/2) x (x² − 1)
pub fn potential_derivative(p: &DoubleWellParams, x: f64) -> f64 {
    0.5 * p.omega * p.omega * x * (x * x - 1.0)
}

/// V″(x) = (ω²/2)(3x² − 1)
pub fn curvature(p: &DoubleWellParams, x: f64) -> f64 {
    0.5 * p.omega * p.omega * (3.0 * x * x - 1.0)
}

pub fn profile(c: &InstantonConfig, tau: f64) -> f64 {
    c.phase(tau).tanh()
}

/// dx_c/dτ = (ω/2) sech²
pub fn profile_velocity(c: &InstantonConfig, tau: f64) -> f64 {
    let s = sech(c.phase(tau));
    0.5 * c.params.omega * s * s
}

/// d²x_c/dτ² = −(ω²/2) sech² tanh
pub fn profile_acceleration(c: &InstantonConfig, tau: f64) -> f64 {
    let y = c.phase(tau);
    let s = sech(y);
    -0.5 * c.params.omega * c.params.omega * s * s * y.tanh()
}

pub fn classical_action(p: &DoubleWellParams) -> f64 {
    p.action()
}

/// Euclidean action `∫ [½ẋ² + V(x)] dτ` along the instanton by quadrature over
/// `τ_c ± 40/ω`.
pub fn classical_action_quadrature(c: &InstantonConfig, spec: &QuadratureSpec) -> Result<Quadrature> {
    let w = c.params.omega;
    let half = 40.0 / w;
    integrate_detailed(
        |tau| {
            let v = profile_velocity(c, tau);
            0.5 * v * v + potential(&c.params, profile(c, tau))
        },
        Interval::Finite(c.tau_c - half, c.tau_c + half),
        spec,
    )
}

/// Normalised translation mode `(1/√S₀) dx_c/dτ`.
pub fn zero_mode(c: &InstantonConfig, tau: f64) -> f64 {
    profile_velocity(c, tau) / c.params.action().sqrt()
}

fn zero_mode_second_derivative(c: &InstantonConfig, tau: f64) -> f64 {
    // d²/dy² sech² y = 4 sech² y − 6 sech⁴ y, y = ω(τ − τ_c)/2
    let w = c.params.omega;
    let s2 = sech(c.phase(tau)).powi(2);
    (0.5 * w).powi(3) * (4.0 * s2 - 6.0 * s2 * s2) / c.params.action().sqrt()
}

/// `V″(x_c(τ)) = ω² − (3ω²/2) sech²(ωτ/2)` with the centre at zero.
pub fn stability_potential(p: &DoubleWellParams, tau: f64) -> f64 {
    let w2 = p.omega * p.omega;
    let s = sech(0.5 * p.omega * tau);
    w2 - 1.5 * w2 * s * s
}

/// Max over samples of `|ẋ − √(2V(x))|` for an arbitrary trial path given as
/// `τ ↦ (x, ẋ)`.
pub fn first_order_residual<F>(p: &DoubleWellParams, path: F, tau_samples: &[f64]) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    tau_samples
        .iter()
        .map(|&tau| {
            let (x, xdot) = path(tau);
            (xdot - (2.0 * potential(p, x)).sqrt()).abs()
        })
        .fold(0.0, f64::max)
}

/// First-order (zero euclidean energy) residual of the instanton.
pub fn eom_residual(c: &InstantonConfig, tau_samples: &[f64]) -> f64 {
    first_order_residual(&c.params, |tau| (profile(c, tau), profile_velocity(c, tau)), tau_samples)
}

/// Max of `|ẍ_c − V′(x_c)|` over the samples.
pub fn eom_residual_second_order(c: &InstantonConfig, tau_samples: &[f64]) -> f64 {
    tau_samples
        .iter()
        .map(|&tau| (profile_acceleration(c, tau) - potential_derivative(&c.params, profile(c, tau))).abs())
        .fold(0.0, f64::max)
}

/// Max of `|−x₀″ + V″(x_c) x₀|` over the samples.
pub fn zero_mode_stability_residual(c: &InstantonConfig, tau_samples: &[f64]) -> f64 {
    tau_samples
        .iter()
        .map(|&tau| {
            let v = curvature(&c.params, profile(c, tau));
            (-zero_mode_second_derivative(c, tau) + v * zero_mode(c, tau)).abs()
        })
        .fold(0.0, f64::max)
}
