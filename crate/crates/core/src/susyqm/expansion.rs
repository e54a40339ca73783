//! Finite sums `Σ c_ab tanhᵃz sechᵇz · e^{ikz}`.
//!
//! The set is closed under `d/dz` and multiplication by `tanh z`, so the
//! ladder operators act exactly. Terms are kept in canonical form with
//! `a ∈ {0, 1}` by rewriting `tanh² = 1 − sech²`.

use std::collections::BTreeMap;

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    terms: BTreeMap<(u32, u32), Complex64>,
    wavenumber: f64,
}

impl Expansion {
    pub fn zero(wavenumber: f64) -> Self {
        Self {
            terms: BTreeMap::new(),
            wavenumber,
        }
    }

    /// Single term `c · tanhᵃ sechᵇ e^{ikz}`.
    pub fn monomial(a: u32, b: u32, coeff: Complex64, wavenumber: f64) -> Self {
        let mut e = Self::zero(wavenumber);
        e.add_term(a, b, coeff);
        e
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    /// Canonical terms, keyed by `(a, b)` with `a ≤ 1`.
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Complex64> {
        &self.terms
    }

    pub fn coefficient(&self, a: u32, b: u32) -> Complex64 {
        self.terms.get(&(a, b)).copied().unwrap_or_default()
    }

    fn add_term(&mut self, a: u32, b: u32, coeff: Complex64) {
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        if a >= 2 {
            // tanhᵃ sechᵇ = tanh^{a−2} sechᵇ − tanh^{a−2} sech^{b+2}
            self.add_term(a - 2, b, coeff);
            self.add_term(a - 2, b + 2, -coeff);
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot += coeff;
        if *slot == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(a, b));
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = Self::zero(self.wavenumber);
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b, c * factor);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.wavenumber, other.wavenumber);
        let mut out = self.clone();
        for (&(a, b), &c) in &other.terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn mul_tanh(&self) -> Self {
        let mut out = Self::zero(self.wavenumber);
        for (&(a, b), &c) in &self.terms {
            out.add_term(a + 1, b, c);
        }
        out
    }

    pub fn mul_sech2(&self) -> Self {
        let mut out = Self::zero(self.wavenumber);
        for (&(a, b), &c) in &self.terms {
            out.add_term(a, b + 2, c);
        }
        out
    }

    /// Exact `d/dz`.
    pub fn derivative(&self) -> Self {
        let ik = Complex64::new(0.0, self.wavenumber);
        let mut out = Self::zero(self.wavenumber);
        for (&(a, b), &c) in &self.terms {
            // d(tanhᵃ) = a tanh^{a−1} sech², d(sechᵇ) = −b sechᵇ tanh
            if a > 0 {
                out.add_term(a - 1, b + 2, c * a as f64);
            }
            if b > 0 {
                out.add_term(a + 1, b, -c * b as f64);
            }
            out.add_term(a, b, c * ik);
        }
        out
    }

    /// Value at `z`, including the plane-wave factor.
    pub fn evaluate(&self, z: f64) -> Complex64 {
        let t = z.tanh();
        let s = 1.0 / z.cosh();
        let poly: Complex64 = self
            .terms
            .iter()
            .map(|(&(a, b), &c)| c * t.powi(a as i32) * s.powi(b as i32))
            .sum();
        if self.wavenumber == 0.0 {
            poly
        } else {
            poly * Complex64::from_polar(1.0, self.wavenumber * z)
        }
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs_coefficient() <= tol
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn canonical_reduction() {
        // tanh² sech = sech − sech³
        let e = Expansion::monomial(2, 1, c(1.0), 0.0);
        assert_eq!(e.coefficient(0, 1), c(1.0));
        assert_eq!(e.coefficient(0, 3), c(-1.0));
        assert_eq!(e.terms().len(), 2);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let mut e = Expansion::monomial(1, 3, Complex64::new(0.7, -0.2), 1.3);
        e = e.add(&Expansion::monomial(0, 2, c(-1.1), 1.3));
        e = e.add(&Expansion::monomial(0, 0, c(0.4), 1.3));
        let d = e.derivative();
        let h = 1e-5;
        for z in [-2.0, -0.3, 0.0, 0.8, 3.0] {
            let fd = (e.evaluate(z + h) - e.evaluate(z - h)) / (2.0 * h);
            let an = d.evaluate(z);
            assert!((fd - an).norm() < 1e-8, "z = {z}: {fd} vs {an}");
        }
    }

    #[test]
    fn sech_derivative() {
        // −d/dz sech = sech tanh
        let d = Expansion::monomial(0, 1, c(1.0), 0.0).derivative().scale(c(-1.0));
        assert_eq!(d.coefficient(1, 1), c(1.0));
        assert_relative_eq!(d.evaluate(0.5).re, (0.5f64).tanh() / (0.5f64).cosh(), max_relative = 1e-14);
    }
}
