use num_complex::Complex;
use serde::Serialize;

use super::sigma::{sigma_norm_estimate, SigmaDomain, SigmaNormEstimate};
use super::track::{track_curves, TrackParams};
use super::LinePath;
use crate::error::{Error, Result};
use crate::hypermatrix::SymmetricHypermatrix;
use crate::scalar::Real;

/// Endpoint eigenvalue movement along `A₀ → A₁` against `‖A₁ - A₀‖_Σ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylGap<T> {
    /// Largest `|λ(1) - λ(0)|` over curves continued across `[0, 1]`.
    pub max_matched_gap: T,
    pub norm_estimate: T,
    /// `max_matched_gap / norm_estimate`; above 1 is a finding, since the norm is a lower bound.
    pub ratio: T,
    pub curves: usize,
    pub broken_curves: usize,
    pub sigma: SigmaNormEstimate<T>,
}

pub fn weyl_gap_experiment<T: Real>(
    a0: &SymmetricHypermatrix<Complex<T>>,
    a1: &SymmetricHypermatrix<Complex<T>>,
    params: &TrackParams<T>,
    sigma_starts: usize,
    domain: SigmaDomain,
) -> Result<WeylGap<T>> {
    let path = LinePath::between(a0, a1)?;
    let curves = track_curves(&path, params)?;
    let matched: Vec<_> = curves.iter().filter(|c| c.matched).collect();
    if matched.is_empty() {
        let at = curves.iter().filter_map(|c| c.broken_at).fold(T::one(), T::min);
        return Err(Error::Singular {
            t: at.as_f64(),
            reason: format!("all {} curves broke down", curves.len()),
        });
    }
    let max_matched_gap = matched
        .iter()
        .map(|c| (c.end().lambda - c.start().lambda).norm())
        .fold(T::zero(), T::max);
    let sigma = sigma_norm_estimate(path.direction(), sigma_starts, domain, params.solver.seed)?;
    let ratio = if sigma.value > T::zero() {
        max_matched_gap / sigma.value
    } else if max_matched_gap == T::zero() {
        T::zero()
    } else {
        T::infinity()
    };
    Ok(WeylGap {
        max_matched_gap,
        norm_estimate: sigma.value,
        ratio,
        curves: curves.len(),
        broken_curves: curves.len() - matched.len(),
        sigma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::complete_gap;

    type C = Complex<f64>;

    #[test]
    fn identical_endpoints() {
        let a = SymmetricHypermatrix::<C>::all_ones(2, 3).unwrap();
        let w = weyl_gap_experiment(&a, &a, &TrackParams::default(), 8, SigmaDomain::ComplexSphere).unwrap();
        assert_eq!(w.max_matched_gap, 0.0);
        assert_eq!(w.norm_estimate, 0.0);
        assert_eq!(w.ratio, 0.0);
    }

    #[test]
    fn identity_doubling() {
        let id = SymmetricHypermatrix::<C>::identity(2, 3).unwrap();
        let w = weyl_gap_experiment(
            &id,
            &id.scale_real(2.0),
            &TrackParams::default(),
            16,
            SigmaDomain::ComplexSphere,
        )
        .unwrap();
        assert!((w.max_matched_gap - 1.0).abs() < 1e-9);
        assert!(w.norm_estimate >= 1.0 - 1e-12);
        assert!(w.ratio <= 1.0 + 1e-8);
    }

    #[test]
    fn complete_gap_path() {
        let half_ones = SymmetricHypermatrix::<C>::all_ones(4, 3).unwrap().scale_real(0.5);
        let b = complete_gap::<C>(4, 3).unwrap();
        let a0 = half_ones.sub(&b).unwrap();
        let w = weyl_gap_experiment(&a0, &half_ones, &TrackParams::default(), 16, SigmaDomain::ComplexSphere).unwrap();
        assert!(w.max_matched_gap.is_finite() && w.norm_estimate > 0.0);
        assert!(w.curves > 0);
    }
}
