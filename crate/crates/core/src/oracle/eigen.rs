//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::error::{Error, Result};

use super::{GridEigenSystem, TridiagonalOperator};

impl TridiagonalOperator {
    fn gershgorin(&self) -> (f64, f64) {
        let n = self.diagonal.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off_diagonal[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off_diagonal[i].abs() } else { 0.0 };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        (lo, hi)
    }

    fn pivmin(&self) -> f64 {
        let max_e2 = self.off_diagonal.iter().map(|e| e * e).fold(1.0, f64::max);
        f64::MIN_POSITIVE * max_e2
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn sturm_count(&self, x: f64) -> usize {
        let pivmin = self.pivmin();
        let mut count = 0;
        let mut q = self.diagonal[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diagonal.len() {
            let e = self.off_diagonal[i - 1];
            q = self.diagonal[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Pivots of the LDLᵀ factorisation of `T − x`; their product is
    /// `det(T − x)`.
    pub(crate) fn pivots(&self, x: f64) -> Vec<f64> {
        let pivmin = self.pivmin();
        let mut out = Vec::with_capacity(self.diagonal.len());
        let mut q = self.diagonal[0] - x;
        for i in 0..self.diagonal.len() {
            if i > 0 {
                let e = self.off_diagonal[i - 1];
                q = self.diagonal[i] - x - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            out.push(q);
        }
        out
    }

    /// `index`-th smallest eigenvalue (0-based), bisected to machine
    /// resolution.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        let n = self.diagonal.len();
        if index >= n {
            return Err(Error::Domain(format!("eigenvalue index {index} out of range for {n} points")));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * (lo.abs().max(hi.abs())) + f64::MIN_POSITIVE;
        lo -= pad;
        hi += pad;
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::Eigen(format!("bisection for eigenvalue {index} did not terminate")))
    }

    /// Inverse iteration for the eigenvector of `lambda`, orthogonalised
    /// against `previous`. Unit Euclidean norm, largest component positive.
    pub fn eigenvector(&self, lambda: f64, previous: &[Vec<f64>]) -> Vec<f64> {
        let n = self.diagonal.len();
        let scale = self.gershgorin().1.abs().max(1.0);
        let shift = lambda + 4.0 * f64::EPSILON * scale;
        // deterministic non-symmetric start vector
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i % 7) as f64) / 7.0).collect();
        for _ in 0..4 {
            for p in previous {
                let dot: f64 = p.iter().zip(&x).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(p).for_each(|(xi, pi)| *xi -= dot * pi);
            }
            x = self.solve_shifted(shift, &x, scale);
            let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            x.iter_mut().for_each(|v| *v /= norm);
        }
        for p in previous {
            let dot: f64 = p.iter().zip(&x).map(|(a, b)| a * b).sum();
            x.iter_mut().zip(p).for_each(|(xi, pi)| *xi -= dot * pi);
        }
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let peak = x.iter().copied().fold(0.0, |m: f64, v| if v.abs() > m.abs() { v } else { m });
        let sign = if peak < 0.0 { -1.0 } else { 1.0 };
        x.iter_mut().for_each(|v| *v *= sign / norm);
        x
    }

    /// Thomas algorithm for `(T − shift) y = rhs`.
    fn solve_shifted(&self, shift: f64, rhs: &[f64], scale: f64) -> Vec<f64> {
        let n = self.diagonal.len();
        let tiny = f64::EPSILON * scale;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut piv = self.diagonal[0] - shift;
        if piv.abs() < tiny {
            piv = tiny;
        }
        c[0] = if n > 1 { self.off_diagonal[0] / piv } else { 0.0 };
        d[0] = rhs[0] / piv;
        for i in 1..n {
            let e = self.off_diagonal[i - 1];
            piv = self.diagonal[i] - shift - e * c[i - 1];
            if piv.abs() < tiny {
                piv = tiny;
            }
            c[i] = if i + 1 < n { self.off_diagonal[i] / piv } else { 0.0 };
            d[i] = (rhs[i] - e * d[i - 1]) / piv;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            y[i] = d[i] - c[i] * y[i + 1];
        }
        y
    }
}

/// The `count` lowest eigenvalues, ascending.
pub fn lowest_eigenvalues(op: &TridiagonalOperator, count: usize) -> Result<GridEigenSystem> {
    if count > op.diagonal.len() {
        return Err(Error::Domain(format!(
            "requested {count} eigenvalues from a {}-point grid",
            op.diagonal.len()
        )));
    }
    let eigenvalues = (0..count).map(|i| op.eigenvalue(i)).collect::<Result<Vec<_>>>()?;
    Ok(GridEigenSystem {
        spec: op.spec,
        eigenvalues,
        eigenvectors: None,
    })
}

/// As [`lowest_eigenvalues`], also filling the eigenvectors.
pub fn lowest_eigenpairs(op: &TridiagonalOperator, count: usize) -> Result<GridEigenSystem> {
    let mut sys = lowest_eigenvalues(op, count)?;
    let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(count);
    for &lambda in &sys.eigenvalues {
        let v = op.eigenvector(lambda, &vecs);
        vecs.push(v);
    }
    sys.eigenvectors = Some(vecs);
    Ok(sys)
}
