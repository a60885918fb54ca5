use num_complex::Complex;
use serde::Serialize;

use super::track::{CurveSample, EigenCurve, Tracker};
use super::LinePath;
use crate::eigen::{EigenPair, SolverParams};
use crate::error::{Error, Result};
use crate::hypermatrix::apply_vector_power;
use crate::scalar::Real;

/// Analytic versus finite-difference eigenvalue derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeCheck<T> {
    /// `B : w^{⊗k}` with `w` the eigenvector scaled to `w^{:k} = 1`.
    pub analytic: Complex<T>,
    /// `(λ(t + h) - λ(t - h)) / 2h` along the continued curve.
    pub numeric: Complex<T>,
    pub gap: T,
}

/// Compares `λ'(t) = B : v^{⊗k}` (for `v^{:k} = 1`) with a central difference.
///
/// `pair` must be an eigenpair of `A(t)`; the eigenvalue is continued to
/// `t ± h` with the same predictor–corrector used by curve tracking.
pub fn derivative_identity_check<T: Real>(
    path: &LinePath<T>,
    t: T,
    pair: &EigenPair<T>,
    h: T,
    params: &SolverParams<T>,
) -> Result<DerivativeCheck<T>> {
    if !(h > T::zero()) || t - h < T::zero() || t + h > T::one() {
        return Err(Error::param(format!(
            "need 0 <= t - h and t + h <= 1, got t={t}, h={h}"
        )));
    }
    let k = path.order();
    let w = pair.scaled_to_unit_power_sum(k)?;
    let analytic = apply_vector_power(path.direction(), &w, k)?.values()[0];

    let tracker = Tracker::new(path, params.newton_tol, 10, 20);
    let v = crate::hypermatrix::normalize_unit(&pair.v)?;
    let here = CurveSample {
        t,
        lambda: pair.lambda,
        v,
        residual: pair.residual,
        depth: 0,
    };
    let mut scratch = Vec::new();
    let mut reach = |target: T| {
        tracker
            .advance(&here, target, 0, &mut scratch)
            .map_err(|at| Error::Singular {
                t: at.as_f64(),
                reason: format!("continuation from t={t} to t={target} failed"),
            })
    };
    let plus = reach(t + h)?;
    let minus = reach(t - h)?;
    let numeric = (plus.lambda - minus.lambda) / (h + h);
    Ok(DerivativeCheck {
        analytic,
        numeric,
        gap: (analytic - numeric).norm(),
    })
}

/// One point of a [`derivative_sweep`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint<T> {
    pub curve: usize,
    pub t: T,
    /// `None` when continuation to `t ± h` failed.
    pub check: Option<DerivativeCheck<T>>,
}

/// Runs [`derivative_identity_check`] at every regular sample of `curves`
/// (see [`EigenCurve::regular_samples`]) that is non-degenerate and has
/// `t ± h` inside `[0, 1]`.
pub fn derivative_sweep<T: Real>(
    path: &LinePath<T>,
    curves: &[EigenCurve<T>],
    h: T,
    params: &SolverParams<T>,
) -> Result<Vec<SweepPoint<T>>> {
    let mut out = Vec::new();
    for c in curves {
        for s in c.regular_samples() {
            if s.t - h < T::zero() || s.t + h > T::one() {
                continue;
            }
            let pair = EigenPair::new(&path.at(s.t), s.v.clone(), s.lambda, params.degeneracy_tol)?;
            if pair.degenerate {
                continue;
            }
            let check = match derivative_identity_check(path, s.t, &pair, h, params) {
                Ok(c) => Some(c),
                Err(Error::Singular { .. }) => None,
                Err(e) => return Err(e),
            };
            out.push(SweepPoint {
                curve: c.id,
                t: s.t,
                check,
            });
        }
    }
    Ok(out)
}
