//! Special functions and quadrature shared by the rest of the crate.

mod gamma;
mod hypergeometric;
mod quadrature;

pub use gamma::{digamma, gamma, ln_factorial, ln_gamma, EULER_GAMMA};
pub use hypergeometric::{
    f_param_derivative_at_zero, gauss2f1, gauss2f1_with, param_derivative_integrals, ParamDerivative,
    DEFAULT_MAX_TERMS, DEFAULT_REL_TOL,
};
pub use quadrature::{integrate, integrate_detailed, Interval, Quadrature, QuadratureSpec};
