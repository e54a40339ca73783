use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument sits on a pole of Gamma or digamma.
    #[error("pole of {function} at x = {x}")]
    Pole { function: &'static str, x: f64 },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (partial sum {partial_sum})")]
    SeriesNonConvergence { partial_sum: f64, terms: usize },

    #[error("quadrature tolerance not met: estimate {estimate}, error {error_estimate} after {subdivisions} subdivisions")]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("ODE integration failed at t = {t}: {reason}")]
    Ode { t: f64, reason: String },

    #[error("eigensolver did not converge: {0}")]
    Eigen(String),

    /// Zero mode of a finite-box operator is not separated from the rest of
    /// the spectrum.
    #[error("lowest eigenvalue {lambda0} not isolated from next eigenvalue {lambda1}")]
    NotIsolated { lambda0: f64, lambda1: f64 },

    #[error("grid not resolved: relative shift {relative_shift} exceeds {tolerance} at {points} points")]
    Unresolved {
        relative_shift: f64,
        tolerance: f64,
        points: usize,
    },
}
