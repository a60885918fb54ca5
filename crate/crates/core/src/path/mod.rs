//! Eigenvalues along line paths `A(t) = A₀ + tB`, `t ∈ [0, 1]`.
//!
//! Curves are continued from the eigenpairs of `A₀` by an Euler predictor
//! (the tangent of the eigenpair system) and a short Newton corrector, with
//! interval bisection where the corrector fails. Along a curve
//! `λ'(t) = B : v^{⊗k}` once `v^{:k} = 1`, which [`derivative_identity_check`]
//! compares against a finite difference of the tracked eigenvalue.

mod derivative;
mod discriminant;
mod sigma;
mod track;
mod weyl;

pub use derivative::{derivative_identity_check, derivative_sweep, DerivativeCheck, SweepPoint};
pub use discriminant::{
    distinct_root_count, generalized_discriminant, merge_roots, DiscriminantProfile, DEFAULT_MERGE_TOL,
    DEFAULT_ZERO_TOL, MAX_DISCRIMINANT_ROOTS,
};
pub use sigma::{sigma_norm_estimate, SigmaDomain, SigmaNormEstimate};
pub use track::{track_curves, CurveSample, EigenCurve, TrackParams};
pub use weyl::{weyl_gap_experiment, WeylGap};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::hypermatrix::{check_same_shape, SymmetricHypermatrix};
use crate::scalar::Real;

/// The segment `A(t) = A₀ + tB`.
#[derive(Debug, Clone)]
pub struct LinePath<T> {
    a0: SymmetricHypermatrix<Complex<T>>,
    b: SymmetricHypermatrix<Complex<T>>,
}

impl<T: Real> LinePath<T> {
    pub fn new(a0: SymmetricHypermatrix<Complex<T>>, b: SymmetricHypermatrix<Complex<T>>) -> Result<Self> {
        check_same_shape(&a0, &b)?;
        if a0.order() < 2 {
            return Err(Error::param("line paths need order >= 2"));
        }
        Ok(Self { a0, b })
    }

    /// The path from `a0` to `a1`, i.e. `B = a1 - a0`.
    pub fn between(a0: &SymmetricHypermatrix<Complex<T>>, a1: &SymmetricHypermatrix<Complex<T>>) -> Result<Self> {
        let b = a1.sub(a0)?;
        Self::new(a0.clone(), b)
    }

    pub fn start(&self) -> &SymmetricHypermatrix<Complex<T>> {
        &self.a0
    }

    pub fn direction(&self) -> &SymmetricHypermatrix<Complex<T>> {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.a0.order()
    }

    pub fn dim(&self) -> usize {
        self.a0.dim()
    }

    pub fn at(&self, t: T) -> SymmetricHypermatrix<Complex<T>> {
        self.a0
            .axpy(&Complex::new(t, T::zero()), &self.b)
            .expect("path endpoints share a shape")
    }
}
