//! Independent numerical ground truth: finite-difference diagonalisation,
//! Gelfand–Yaglom determinants, the finite-box reduced determinant and the
//! physical double-well splitting.

mod eigen;
mod gelfand_yaglom;

pub use eigen::{lowest_eigenpairs, lowest_eigenvalues};
pub use gelfand_yaglom::{gelfand_yaglom_ratio, gelfand_yaglom_ratio_with, shoot, EndpointValue, GyOptions};

use crate::error::{Error, Result};
use crate::instanton::{potential, DoubleWellParams};
use crate::susyqm::o_potential;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    half_width: f64,
    points: usize,
    kinetic_coefficient: f64,
}

impl GridSpec {
    pub const MIN_POINTS: usize = 16;

    /// `kinetic_coefficient` is 1 for stability operators and 1/2 for the
    /// physical Hamiltonian.
    pub fn new(half_width: f64, points: usize, kinetic_coefficient: f64) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(Error::Domain(format!("half width must be positive, got {half_width}")));
        }
        if points < Self::MIN_POINTS {
            return Err(Error::Domain(format!(
                "need at least {} grid points, got {points}",
                Self::MIN_POINTS
            )));
        }
        if kinetic_coefficient != 1.0 && kinetic_coefficient != 0.5 {
            return Err(Error::Domain(format!(
                "kinetic coefficient must be 1 or 1/2, got {kinetic_coefficient}"
            )));
        }
        Ok(Self {
            half_width,
            points,
            kinetic_coefficient,
        })
    }

    /// Stability-operator grid (`−d² + W`).
    pub fn stability(half_width: f64, points: usize) -> Result<Self> {
        Self::new(half_width, points, 1.0)
    }

    /// Physical Hamiltonian grid (`−½d² + V`).
    pub fn physical(half_width: f64, points: usize) -> Result<Self> {
        Self::new(half_width, points, 0.5)
    }

    /// Rule-of-thumb grid resolving both wells at frequency `omega`.
    pub fn for_double_well(p: &DoubleWellParams) -> Self {
        let root = p.omega().sqrt();
        let half_width = 1.0 + 6.0 / root;
        let points = ((100.0 * half_width * root).ceil() as usize).max(Self::MIN_POINTS);
        Self {
            half_width,
            points,
            kinetic_coefficient: 0.5,
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn kinetic_coefficient(&self) -> f64 {
        self.kinetic_coefficient
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.points as f64 + 1.0)
    }

    /// Interior nodes `x_i = −L + (i+1)h`.
    pub fn nodes(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points).map(|i| -self.half_width + (i as f64 + 1.0) * h).collect()
    }

    /// Same box, `2N + 1` points: every old node is kept and the spacing
    /// halves.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points + 1,
            ..*self
        }
    }

    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes().into_iter().map(f).collect()
    }
}

/// Symmetric tridiagonal matrix with its grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator {
    pub spec: GridSpec,
    pub diagonal: Vec<f64>,
    /// Length `points − 1`.
    pub off_diagonal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridEigenSystem {
    pub spec: GridSpec,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// One unit-norm vector of grid samples per eigenvalue, when requested.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
}

/// `−c d²/dx² + V` with the three-point Laplacian and Dirichlet walls.
pub fn discretize(potential_samples: &[f64], spec: &GridSpec) -> Result<TridiagonalOperator> {
    if potential_samples.len() != spec.points {
        return Err(Error::Domain(format!(
            "{} potential samples for a {}-point grid",
            potential_samples.len(),
            spec.points
        )));
    }
    let h = spec.spacing();
    let kin = spec.kinetic_coefficient / (h * h);
    Ok(TridiagonalOperator {
        spec: *spec,
        diagonal: potential_samples.iter().map(|v| 2.0 * kin + v).collect(),
        off_diagonal: vec![-kin; spec.points - 1],
    })
}

pub fn discretize_fn<F: Fn(f64) -> f64>(potential: F, spec: &GridSpec) -> TridiagonalOperator {
    discretize(&spec.sample(potential), spec).expect("sample count matches grid")
}

/// `ln |det T|` and the sign, from the LDLᵀ pivots.
pub fn ln_determinant(op: &TridiagonalOperator) -> (f64, f64) {
    let pivots = op.pivots(0.0);
    let sign = pivots.iter().fold(1.0, |s, q| s * q.signum());
    (sign, pivots.iter().map(|q| q.abs().ln()).sum())
}

/// `det A / det B` for operators on the same grid. Pivot ratios are
/// accumulated pairwise, which keeps the sum of logarithms small.
pub fn determinant_ratio(a: &TridiagonalOperator, b: &TridiagonalOperator) -> Result<f64> {
    if a.spec != b.spec {
        return Err(Error::Domain("determinant ratio needs operators on the same grid".into()));
    }
    let pa = a.pivots(0.0);
    let pb = b.pivots(0.0);
    let mut sign = 1.0;
    let mut ln = 0.0;
    for (qa, qb) in pa.iter().zip(&pb) {
        let r = qa / qb;
        sign *= r.signum();
        ln += r.abs().ln();
    }
    Ok(sign * ln.exp())
}

/// Finite-box estimate of `Det′O_ℓ / Det P_ℓ` with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxRatio {
    pub ell: u32,
    pub half_width: f64,
    pub points: usize,
    /// Richardson combination of the two grids.
    pub value: f64,
    /// Estimate on the requested grid.
    pub coarse: f64,
    /// Estimate on the grid with spacing halved.
    pub fine: f64,
    /// Lowest two eigenvalues of `O_ℓ` on the requested grid.
    pub lambda0: f64,
    pub lambda1: f64,
}

fn box_ratio_on_grid(ell: u32, spec: &GridSpec) -> Result<(f64, f64, f64)> {
    let l2 = f64::from(ell * ell);
    let o = discretize_fn(|z| o_potential(ell, z), spec);
    let p = discretize_fn(|_| l2, spec);
    let sys = lowest_eigenvalues(&o, 2)?;
    let (lambda0, lambda1) = (sys.eigenvalues[0], sys.eigenvalues[1]);
    if lambda0.abs() >= 0.5 * lambda1.abs() {
        return Err(Error::NotIsolated { lambda0, lambda1 });
    }
    Ok((determinant_ratio(&o, &p)? / lambda0, lambda0, lambda1))
}

/// Dirichlet determinant ratio of `O_ℓ` to `P_ℓ` in `[−L, L]` with the
/// lowest box eigenvalue divided out.
///
/// Both determinants come from the discrete Gelfand–Yaglom recurrence on a
/// common grid and `λ₀` from the same matrix, so discretisation errors
/// largely cancel. The remaining O(h²) error is removed by Richardson
/// extrapolation against the grid with spacing halved.
pub fn box_reduced_ratio_detailed(ell: u32, half_width: f64, points: usize) -> Result<BoxRatio> {
    if ell == 0 {
        return Err(Error::Domain("box reduced ratio needs ell >= 1".into()));
    }
    let spec = GridSpec::stability(half_width, points)?;
    let (coarse, lambda0, lambda1) = box_ratio_on_grid(ell, &spec)?;
    let (fine, _, _) = box_ratio_on_grid(ell, &spec.refined())?;
    Ok(BoxRatio {
        ell,
        half_width,
        points,
        value: (4.0 * fine - coarse) / 3.0,
        coarse,
        fine,
        lambda0,
        lambda1,
    })
}

pub fn box_reduced_ratio(ell: u32, half_width: f64, points: usize) -> Result<f64> {
    Ok(box_reduced_ratio_detailed(ell, half_width, points)?.value)
}

/// Grid size giving spacing `≈ 0.025` in a box of half-width `L`.
pub fn default_box_points(half_width: f64) -> usize {
    ((2.0 * half_width / 0.025).round() as usize).saturating_sub(1).max(GridSpec::MIN_POINTS)
}

/// Lowest `count` levels of `−½d² + V` on the grid.
pub fn physical_levels<F: Fn(f64) -> f64>(potential: F, spec: &GridSpec, count: usize) -> Result<GridEigenSystem> {
    if spec.kinetic_coefficient != 0.5 {
        return Err(Error::Domain("physical Hamiltonian needs kinetic coefficient 1/2".into()));
    }
    lowest_eigenvalues(&discretize_fn(potential, spec), count)
}

/// Relative tolerance on the splitting shift between a grid and its
/// refinement.
pub const SPLITTING_REFINEMENT_TOL: f64 = 1e-3;

/// `(E₀, E₁)` of the double well on the given grid, with the grid checked
/// against its refinement.
pub fn physical_splitting(p: &DoubleWellParams, spec: &GridSpec) -> Result<(f64, f64)> {
    let coarse = physical_levels(|x| potential(p, x), spec, 2)?;
    let fine = physical_levels(|x| potential(p, x), &spec.refined(), 2)?;
    let (e0, e1) = (coarse.eigenvalues[0], coarse.eigenvalues[1]);
    let split = e1 - e0;
    let shift = ((fine.eigenvalues[1] - fine.eigenvalues[0]) - split).abs() / split.abs();
    if !(shift < SPLITTING_REFINEMENT_TOL) {
        return Err(Error::Unresolved {
            relative_shift: shift,
            tolerance: SPLITTING_REFINEMENT_TOL,
            points: spec.points,
        });
    }
    Ok((e0, e1))
}

/// Reflection overlaps `Σ ψ(x)ψ(−x)` of the two lowest double-well states:
/// `+1` for an even state, `−1` for an odd one.
pub fn splitting_parities(p: &DoubleWellParams, spec: &GridSpec) -> Result<(f64, f64)> {
    if spec.kinetic_coefficient != 0.5 {
        return Err(Error::Domain("physical Hamiltonian needs kinetic coefficient 1/2".into()));
    }
    let sys = lowest_eigenpairs(&discretize_fn(|x| potential(p, x), spec), 2)?;
    let vecs = sys.eigenvectors.expect("eigenvectors requested");
    let reflect = |v: &Vec<f64>| v.iter().zip(v.iter().rev()).map(|(a, b)| a * b).sum::<f64>();
    Ok((reflect(&vecs[0]), reflect(&vecs[1])))
}
