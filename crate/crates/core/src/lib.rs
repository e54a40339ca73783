//! Semiclassical tunneling in the one-dimensional double-well potential.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Gamma/digamma, the Gauss hypergeometric series and adaptive
//!   Gauss–Kronrod quadrature with graded transforms for infinite tails.
//! - [`instanton`]: the double well, its instanton, euclidean action, zero mode
//!   and the stability-equation potential.
//! - [`susyqm`]: superpotential `W = ℓ tanh z`, exact eigenfunctions of the
//!   reflectionless operators `O_ℓ` held in a closed symbolic basis, and the
//!   regularized continuum density.
//! - [`zetadet`]: the regularized zeta function, its derivative at zero,
//!   determinants, the scaling law and the harmonic-oscillator amplitude.
//! - [`oracle`]: independent numerics (finite-difference spectra,
//!   Gelfand–Yaglom determinants, finite-box reduced determinants, the exact
//!   double-well splitting).
//! - [`dilutegas`]: instanton density, multi-instanton amplitudes and the
//!   level-splitting formulas.
//!
//! Units are dimensionless with `m = ħ = 1`.

// `!(x > 0.0)` is deliberate: NaN has to fail input checks.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod dilutegas;
pub mod error;
pub mod instanton;
pub mod oracle;
pub mod specfun;
pub mod susyqm;
pub mod zetadet;

pub use error::{Error, Result};
