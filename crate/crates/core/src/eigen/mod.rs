//! Homogeneous eigenpairs `A : v^{⊗(k-1)} = λ v^{∘(k-1)}` over the complex numbers.
//!
//! [`enumerate_eigenpairs`] runs multistart damped Newton on the eigenpair
//! system restricted to a random affine chart, [`power_iteration_nonneg`]
//! brackets the spectral radius of nonnegative hypermatrices, and
//! [`matrix_oracle`] gives classical ground truth for `k = 2`.

mod enumerate;
pub(crate) mod newton;
mod oracle;
mod power;

pub use enumerate::{enumerate_eigenpairs, expected_eigenvalue_count, MAX_EXPECTED_COUNT};
pub use oracle::matrix_oracle;
pub use power::{power_iteration_nonneg, PowerIteration};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypermatrix::{apply_k_minus_1, apply_vector_power, vector_power_sum, SymmetricHypermatrix};
use crate::scalar::{norm2, Real};

/// Default threshold on `|v^{:k}|` below which a vector is treated as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-8;

/// An eigenvector/eigenvalue pair with its recomputable diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair<T> {
    pub v: Vec<Complex<T>>,
    pub lambda: Complex<T>,
    /// `‖A : v^{⊗(k-1)} - λ v^{∘(k-1)}‖₂` for the stored `v`.
    pub residual: T,
    /// `v^{:k} = Σ v_i^k` for the stored `v`.
    pub normalization: Complex<T>,
    /// `|v^{:k}|` fell below the degeneracy tolerance.
    pub degenerate: bool,
}

impl<T: Real> EigenPair<T> {
    /// Evaluates residual and normalization for `(v, λ)` against `a`.
    pub fn new(
        a: &SymmetricHypermatrix<Complex<T>>,
        v: Vec<Complex<T>>,
        lambda: Complex<T>,
        degeneracy_tol: T,
    ) -> Result<Self> {
        let residual = residual(a, &v, lambda)?;
        let normalization = vector_power_sum(&v, a.order() as u32)?;
        Ok(Self {
            degenerate: normalization.norm() < degeneracy_tol,
            v,
            lambda,
            residual,
            normalization,
        })
    }

    /// Rescales `v` so that `v^{:k} = 1`; fails for degenerate pairs.
    pub fn scaled_to_unit_power_sum(&self, k: usize) -> Result<Vec<Complex<T>>> {
        if self.degenerate {
            return Err(Error::Degenerate(format!(
                "v^{{:{k}}} = {} is too small to normalize",
                self.normalization
            )));
        }
        let c = self.normalization.powf(-T::one() / T::lit(k as f64));
        Ok(self.v.iter().map(|z| z * c).collect())
    }
}

/// Eigenpairs found for one hypermatrix, deduplicated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport<T> {
    /// Projectively distinct pairs, sorted by `(Re λ, Im λ)`.
    pub pairs: Vec<EigenPair<T>>,
    /// Distinct eigenvalues (one representative per tolerance cluster), sorted.
    pub eigenvalues: Vec<Complex<T>>,
    /// Number of distinct eigenvalues found.
    pub found_count: usize,
    /// Degree `n(k-1)^{n-1}` of the characteristic polynomial.
    pub expected_count: u64,
    /// Largest modulus among the found eigenvalues.
    pub radius: T,
    pub starts: usize,
    pub converged_starts: usize,
}

impl<T: Real> SpectrumReport<T> {
    pub(crate) fn from_clusters(
        pairs: Vec<EigenPair<T>>,
        eigenvalues: Vec<Complex<T>>,
        expected_count: u64,
        starts: usize,
        converged_starts: usize,
    ) -> Self {
        let radius = eigenvalues.iter().map(|z| z.norm()).fold(T::zero(), T::max);
        Self {
            found_count: eigenvalues.len(),
            pairs,
            eigenvalues,
            expected_count,
            radius,
            starts,
            converged_starts,
        }
    }

    /// Whether every eigenvalue predicted by the degree count was resolved.
    pub fn is_complete(&self) -> bool {
        self.found_count as u64 >= self.expected_count
    }
}

/// Spectral radius read off a report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusEstimate<T> {
    pub value: T,
    /// Fewer distinct values than the degree were found, so `value` is only a lower bound.
    pub lower_bound_only: bool,
}

pub fn spectral_radius<T: Real>(report: &SpectrumReport<T>) -> Result<RadiusEstimate<T>> {
    if report.eigenvalues.is_empty() {
        return Err(Error::param("spectrum report has no eigenvalues"));
    }
    Ok(RadiusEstimate {
        value: report.radius,
        lower_bound_only: !report.is_complete(),
    })
}

/// Tuning knobs of the multistart solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverParams<T> {
    /// Defaults to `20 × expected_count`.
    pub num_starts: Option<usize>,
    pub newton_tol: T,
    /// Relative tolerance for merging eigenvalues.
    pub dedup_tol: T,
    pub degeneracy_tol: T,
    pub max_newton_iters: usize,
    pub seed: u64,
}

impl<T: Real> Default for SolverParams<T> {
    fn default() -> Self {
        Self {
            num_starts: None,
            newton_tol: T::lit(1e-10),
            dedup_tol: T::lit(1e-6),
            degeneracy_tol: T::lit(DEFAULT_DEGENERACY_TOL),
            max_newton_iters: 100,
            seed: 0,
        }
    }
}

impl<T: Real> SolverParams<T> {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }
}

fn check_vector<T: Real>(a: &SymmetricHypermatrix<Complex<T>>, v: &[Complex<T>]) -> Result<()> {
    if v.len() != a.dim() {
        return Err(Error::shape(format!(
            "vector of length {} against dimension {}",
            v.len(),
            a.dim()
        )));
    }
    if a.order() < 2 {
        return Err(Error::param(format!("order {} must be >= 2", a.order())));
    }
    if v.iter().all(|z| z.norm_sqr() == T::zero()) {
        return Err(Error::Degenerate("zero vector".into()));
    }
    Ok(())
}

/// `‖A : v^{⊗(k-1)} - λ v^{∘(k-1)}‖₂`.
pub fn residual<T: Real>(a: &SymmetricHypermatrix<Complex<T>>, v: &[Complex<T>], lambda: Complex<T>) -> Result<T> {
    check_vector(a, v)?;
    let k = a.order() as u32;
    let y = apply_k_minus_1(a, v);
    let defect: Vec<Complex<T>> = y.iter().zip(v).map(|(yj, vj)| yj - lambda * vj.powu(k - 1)).collect();
    Ok(norm2(&defect))
}

/// `(A : v^{⊗k}) / v^{:k}`.
pub fn rayleigh<T: Real>(
    a: &SymmetricHypermatrix<Complex<T>>,
    v: &[Complex<T>],
    degeneracy_tol: T,
) -> Result<Complex<T>> {
    check_vector(a, v)?;
    let k = a.order();
    let denom = vector_power_sum(v, k as u32)?;
    if denom.norm() <= degeneracy_tol {
        return Err(Error::Degenerate(format!("v^{{:{k}}} = {denom} vanishes")));
    }
    let num = apply_vector_power(a, v, k)?.values()[0];
    Ok(num / denom)
}
