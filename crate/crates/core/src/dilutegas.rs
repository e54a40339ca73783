//! Dilute instanton gas: density, collective-coordinate volume, the
//! multi-instanton amplitude series with their sinh/cosh sums, and the
//! splitting of the two lowest levels.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::instanton::{potential, DoubleWellParams};
use crate::oracle::{physical_levels, GridSpec, SPLITTING_REFINEMENT_TOL};
use crate::specfun::ln_factorial;

/// `√(6/π) √S₀ e^{−S₀}`, i.e. `2√(ω/π) e^{−2ω/3}`.
pub fn instanton_density(p: &DoubleWellParams) -> f64 {
    let s0 = p.action();
    (6.0 / PI).sqrt() * s0.sqrt() * (-s0).exp()
}

/// `(ωT)^j / j!`
pub fn collective_volume(j: u32, p: &DoubleWellParams, t: f64) -> f64 {
    let x = p.omega() * t;
    if j == 0 {
        return 1.0;
    }
    (f64::from(j) * x.ln() - ln_factorial(j)).exp()
}

/// `ωTd`, the expansion parameter of the one-instanton term. Values of
/// order one or larger mean the whole series has to be summed.
pub fn validity_diagnostic(p: &DoubleWellParams, t: f64) -> f64 {
    p.omega() * t * instanton_density(p)
}

/// Partial sum of `x^n/n!` over the first `terms` odd (or even) `n`.
fn parity_series(x: f64, odd: bool, terms: usize) -> f64 {
    let mut n = if odd { 1u32 } else { 0 };
    let mut term = if odd { x } else { 1.0 };
    let mut sum = 0.0;
    for _ in 0..terms {
        sum += term;
        term *= x * x / f64::from((n + 1) * (n + 2));
        n += 2;
    }
    sum
}

/// `⟨∓a| e^{−HT} |a⟩` in the dilute-gas approximation.
///
/// `same_endpoint` selects the even-instanton-number (cosh) sum, otherwise
/// the odd one (sinh). `truncation = Some(n)` keeps the first `n` terms of
/// the series, counted from the lowest power.
pub fn transition_amplitude(p: &DoubleWellParams, t: f64, same_endpoint: bool, truncation: Option<usize>) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("T must be positive, got {t}")));
    }
    let omega = p.omega();
    let x = validity_diagnostic(p, t);
    let bare = (omega / PI).sqrt() * (-0.5 * omega * t).exp();
    let series = match (truncation, same_endpoint) {
        (Some(n), odd) => parity_series(x, !odd, n),
        (None, true) => x.cosh(),
        (None, false) => x.sinh(),
    };
    Ok(bare * series)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingReport {
    pub omega: f64,
    pub d: f64,
    pub e0_inst: f64,
    pub e1_inst: f64,
    pub e0_oracle: Option<f64>,
    pub e1_oracle: Option<f64>,
    /// `ΔE_oracle / ΔE_inst`
    pub ratio: Option<f64>,
    /// Grid size the oracle settled on.
    pub oracle_points: Option<usize>,
}

impl SplittingReport {
    /// `2ωd`, without the cancellation of `E₁ − E₀`.
    pub fn delta_e_inst(&self) -> f64 {
        2.0 * self.omega * self.d
    }

    pub fn delta_e_oracle(&self) -> Option<f64> {
        Some(self.e1_oracle? - self.e0_oracle?)
    }

    pub fn action(&self) -> f64 {
        2.0 * self.omega / 3.0
    }
}

/// `E₀,₁ = ω/2 ∓ ωd`.
pub fn level_energies(p: &DoubleWellParams) -> SplittingReport {
    let omega = p.omega();
    let d = instanton_density(p);
    SplittingReport {
        omega,
        d,
        e0_inst: 0.5 * omega - omega * d,
        e1_inst: 0.5 * omega + omega * d,
        e0_oracle: None,
        e1_oracle: None,
        ratio: None,
        oracle_points: None,
    }
}

/// Maximum number of grid doublings in [`compare_with_oracle`].
pub const MAX_REFINEMENTS: usize = 6;

/// Instanton levels next to grid diagonalisation. The grid is refined
/// (`N → 2N + 1`) until the splitting moves by less than `1e−3` relative;
/// the finer of the last two grids is reported.
pub fn compare_with_oracle(p: &DoubleWellParams, spec: &GridSpec) -> Result<SplittingReport> {
    let mut report = level_energies(p);
    let levels = |g: &GridSpec| -> Result<(f64, f64)> {
        let sys = physical_levels(|x| potential(p, x), g, 2)?;
        Ok((sys.eigenvalues[0], sys.eigenvalues[1]))
    };
    let mut grid = *spec;
    let mut current = levels(&grid)?;
    let mut shift = f64::INFINITY;
    for _ in 0..MAX_REFINEMENTS {
        let finer = grid.refined();
        let next = levels(&finer)?;
        let (split_a, split_b) = (current.1 - current.0, next.1 - next.0);
        shift = ((split_b - split_a) / split_b).abs();
        grid = finer;
        current = next;
        if shift < SPLITTING_REFINEMENT_TOL {
            report.e0_oracle = Some(current.0);
            report.e1_oracle = Some(current.1);
            report.ratio = Some((current.1 - current.0) / report.delta_e_inst());
            report.oracle_points = Some(grid.points());
            return Ok(report);
        }
    }
    Err(Error::Unresolved {
        relative_shift: shift,
        tolerance: SPLITTING_REFINEMENT_TOL,
        points: grid.points(),
    })
}
