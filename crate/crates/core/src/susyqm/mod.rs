//! Shape-invariant superpotential `W(z, ℓ) = ℓ tanh z` and the reflectionless
//! operators `O_ℓ = −d²/dz² − ℓ(ℓ+1) sech² z + ℓ²`.
//!
//! Eigenfunctions are built by ladder operators acting on the closed basis of
//! [`Expansion`], so differentiation and eigen-residuals are exact up to
//! floating-point rounding of the coefficients.

mod expansion;

use std::f64::consts::PI;

use num_complex::Complex64;

pub use expansion::Expansion;

use crate::error::{Error, Result};
use crate::specfun::{integrate_detailed, ln_factorial, Interval, QuadratureSpec};

/// Half-width of the z-window used for quadrature over the real line. Every
/// integrand integrated there decays at least like `sech² z`.
pub const Z_WINDOW: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SusyLevel {
    ell: u32,
}

impl SusyLevel {
    pub fn new(ell: u32) -> Result<Self> {
        if ell < 1 {
            return Err(Error::Domain("ell must be at least 1".into()));
        }
        Ok(Self { ell })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn superpotential(&self, z: f64) -> f64 {
        self.ell as f64 * z.tanh()
    }

    /// Parameter of the partner hierarchy, `ℓ → ℓ − 1`. `None` for `ℓ = 1`,
    /// whose partner is the free particle.
    pub fn shifted(&self) -> Option<SusyLevel> {
        (self.ell > 1).then(|| SusyLevel { ell: self.ell - 1 })
    }

    /// Number of strictly positive bound levels, `ℓ − 1`.
    pub fn excited_bound_count(&self) -> u32 {
        self.ell - 1
    }
}

fn sech2(z: f64) -> f64 {
    let s = 1.0 / z.cosh();
    s * s
}

/// `(W² − W′, W² + W′)` for `W = ℓ tanh z`; `ell = 0` is the free particle.
fn partners_raw(ell: u32, z: f64) -> (f64, f64) {
    let l = ell as f64;
    let w = l * z.tanh();
    let wp = l * sech2(z);
    (w * w - wp, w * w + wp)
}

/// Partner potentials `(V₋, V₊)`. `V₋` is exactly the potential of `O_ℓ`.
pub fn partner_potentials(lv: &SusyLevel, z: f64) -> (f64, f64) {
    partners_raw(lv.ell, z)
}

/// Potential of `O_ℓ`: `ℓ² − ℓ(ℓ+1) sech² z`.
pub fn o_potential(ell: u32, z: f64) -> f64 {
    let l = ell as f64;
    l * l - l * (l + 1.0) * sech2(z)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeInvariance {
    /// Mean of `V₊(z, ℓ) − V₋(z, ℓ − 1)` over the samples.
    pub constant: f64,
    /// Largest deviation from that mean.
    pub max_deviation: f64,
}

pub fn shape_invariance_residual(lv: &SusyLevel, z_samples: &[f64]) -> Result<ShapeInvariance> {
    if z_samples.is_empty() {
        return Err(Error::Domain("no z samples".into()));
    }
    let diffs: Vec<f64> = z_samples
        .iter()
        .map(|&z| partners_raw(lv.ell, z).1 - partners_raw(lv.ell - 1, z).0)
        .collect();
    let constant = diffs.iter().sum::<f64>() / diffs.len() as f64;
    let max_deviation = diffs.iter().map(|d| (d - constant).abs()).fold(0.0, f64::max);
    Ok(ShapeInvariance { constant, max_deviation })
}

/// `E_m = ℓ² − (ℓ − m)²` for `0 ≤ m < ℓ`.
pub fn bound_energy(lv: &SusyLevel, m: u32) -> Result<f64> {
    if m >= lv.ell {
        return Err(Error::Domain(format!(
            "O_{} has no bound state m = {m} (m must be below {})",
            lv.ell, lv.ell
        )));
    }
    let l = lv.ell as f64;
    let r = (lv.ell - m) as f64;
    Ok(l * l - r * r)
}

/// Exact eigenfunction of `O_ℓ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SusyState {
    pub terms: Expansion,
    /// `None` for bound states.
    pub wavenumber: Option<f64>,
    pub energy: f64,
}

impl SusyState {
    pub fn evaluate(&self, z: f64) -> Complex64 {
        self.terms.evaluate(z)
    }

    /// `⟨self, other⟩ = ∫ conj(self)·other` over `[a, b]`.
    pub fn overlap(&self, other: &SusyState, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Complex64> {
        let re = integrate_detailed(
            |z| (self.evaluate(z).conj() * other.evaluate(z)).re,
            Interval::Finite(a, b),
            spec,
        )?;
        let im = integrate_detailed(
            |z| (self.evaluate(z).conj() * other.evaluate(z)).im,
            Interval::Finite(a, b),
            spec,
        )?;
        Ok(Complex64::new(re.value, im.value))
    }

    /// L² norm squared over the real line. Only meaningful for bound states.
    pub fn norm_squared(&self, spec: &QuadratureSpec) -> Result<f64> {
        integrate_detailed(|z| self.evaluate(z).norm_sqr(), Interval::Finite(-Z_WINDOW, Z_WINDOW), spec)
            .map(|q| q.value)
    }
}

/// `A†_ℓ ψ = −ψ′ + ℓ tanh z · ψ`
pub fn raise(ell: u32, e: &Expansion) -> Expansion {
    e.derivative()
        .scale(Complex64::new(-1.0, 0.0))
        .add(&e.mul_tanh().scale(Complex64::new(ell as f64, 0.0)))
}

/// `A_ℓ ψ = ψ′ + ℓ tanh z · ψ`
pub fn lower(ell: u32, e: &Expansion) -> Expansion {
    e.derivative().add(&e.mul_tanh().scale(Complex64::new(ell as f64, 0.0)))
}

/// `O_ℓ ψ = −ψ″ + (ℓ² − ℓ(ℓ+1) sech²) ψ`
pub fn apply_hamiltonian(ell: u32, e: &Expansion) -> Expansion {
    let l = ell as f64;
    e.derivative()
        .derivative()
        .scale(Complex64::new(-1.0, 0.0))
        .add(&e.scale(Complex64::new(l * l, 0.0)))
        .add(&e.mul_sech2().scale(Complex64::new(-l * (l + 1.0), 0.0)))
}

/// Applies `A†_ℓ` to a state. An `O_{ℓ−1}` eigenstate of energy `E` maps to an
/// `O_ℓ` eigenstate of energy `E + 2ℓ − 1`, which is the energy recorded on
/// the result. No normalisation is applied.
pub fn apply_ladder(lv: &SusyLevel, state: &SusyState) -> SusyState {
    let l = lv.ell as f64;
    SusyState {
        terms: raise(lv.ell, &state.terms),
        wavenumber: state.wavenumber,
        energy: state.energy + 2.0 * l - 1.0,
    }
}

/// `A_ℓ` applied to a state.
pub fn apply_annihilator(lv: &SusyLevel, state: &SusyState) -> Expansion {
    lower(lv.ell, &state.terms)
}

/// Normalised zero-energy ground state of `O_n`, `sechⁿ z` times its
/// normalisation, computed through log-factorials.
fn ground_expansion(n: u32) -> Expansion {
    // √(2(2n−1)!) / (2ⁿ (n−1)!)
    let ln_norm = 0.5 * (2f64.ln() + ln_factorial(2 * n - 1)) - n as f64 * 2f64.ln() - ln_factorial(n - 1);
    Expansion::monomial(0, n, Complex64::new(ln_norm.exp(), 0.0), 0.0)
}

/// Normalised bound state `φ_{ℓ,m}`.
pub fn bound_state(lv: &SusyLevel, m: u32) -> Result<SusyState> {
    let energy = bound_energy(lv, m)?;
    let base = lv.ell - m;
    let mut e = ground_expansion(base);
    for level in base + 1..=lv.ell {
        e = raise(level, &e);
    }
    // Π_{j<m} (E_m − E_j)
    let ln_gap: f64 = (0..m).map(|j| (energy - bound_energy(lv, j).unwrap()).ln()).sum();
    let terms = e.scale(Complex64::new((-0.5 * ln_gap).exp(), 0.0));
    Ok(SusyState {
        terms,
        wavenumber: None,
        energy,
    })
}

/// Delta-normalised scattering state `φ_{ℓ,k}` with energy `k² + ℓ²`.
pub fn scattering_state(lv: &SusyLevel, k: f64) -> SusyState {
    let mut e = Expansion::monomial(0, 0, Complex64::new(1.0 / (2.0 * PI).sqrt(), 0.0), k);
    for level in 1..=lv.ell {
        let l = level as f64;
        e = raise(level, &e).scale(Complex64::new(1.0 / (k * k + l * l).sqrt(), 0.0));
    }
    let l = lv.ell as f64;
    SusyState {
        terms: e,
        wavenumber: Some(k),
        energy: k * k + l * l,
    }
}

/// Max over samples of `|O_ℓ φ − E φ|`, with `O_ℓ φ` formed symbolically.
pub fn eigen_residual(lv: &SusyLevel, state: &SusyState, z_samples: &[f64]) -> f64 {
    let residual = apply_hamiltonian(lv.ell, &state.terms).add(&state.terms.scale(Complex64::new(-state.energy, 0.0)));
    z_samples
        .iter()
        .map(|&z| residual.evaluate(z).norm())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DensityMethod {
    /// `−(1/π) Σ_{n=1}^{ℓ} n/(k² + n²)`
    Closed,
    /// `∫ [|φ_{ℓ,k}(z)|² − 1/(2π)] dz` by quadrature.
    Integrated,
}

impl DensityMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            DensityMethod::Closed => "closed",
            DensityMethod::Integrated => "integrated",
        }
    }
}

/// Regularized continuum density of `O_ℓ` relative to `P_ℓ = −d²/dz² + ℓ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralDensity {
    pub ell: u32,
    pub method: DensityMethod,
    pub spec: QuadratureSpec,
}

impl SpectralDensity {
    pub fn new(lv: &SusyLevel, method: DensityMethod) -> Self {
        Self {
            ell: lv.ell,
            method,
            spec: QuadratureSpec::default(),
        }
    }

    /// Partial-fraction weights `(n², −n/π)` of the closed form.
    pub fn partial_fractions(&self) -> Vec<(f64, f64)> {
        (1..=self.ell)
            .map(|n| {
                let n = n as f64;
                (n * n, -n / PI)
            })
            .collect()
    }

    pub fn at(&self, k: f64) -> Result<f64> {
        match self.method {
            DensityMethod::Closed => Ok(closed_density(self.ell, k)),
            DensityMethod::Integrated => {
                let lv = SusyLevel::new(self.ell)?;
                integrated_density(&lv, k, &self.spec)
            }
        }
    }
}

fn closed_density(ell: u32, k: f64) -> f64 {
    let k2 = k * k;
    -(1..=ell)
        .map(|n| {
            let n = n as f64;
            n / (k2 + n * n)
        })
        .sum::<f64>()
        / PI
}

/// Closed-form regularized spectral density `ρ_r(k)`.
pub fn spectral_density(lv: &SusyLevel, k: f64) -> f64 {
    closed_density(lv.ell, k)
}

/// `ρ_r(k)` from the subtracted diagonal density matrix, integrated over z.
pub fn integrated_density(lv: &SusyLevel, k: f64, spec: &QuadratureSpec) -> Result<f64> {
    let state = scattering_state(lv, k);
    let free = 1.0 / (2.0 * PI);
    integrate_detailed(
        |z| state.evaluate(z).norm_sqr() - free,
        Interval::Finite(-Z_WINDOW, Z_WINDOW),
        spec,
    )
    .map(|q| q.value)
}
