use rayon::prelude::*;
use serde::Serialize;

use crate::eigen::{enumerate_eigenpairs, expected_eigenvalue_count, SolverParams, MAX_EXPECTED_COUNT};
use crate::ensembles::random_gap;
use crate::error::{Error, Result};
use crate::hypermatrix::SymmetricHypermatrix;
use crate::rng::derive_seed;
use crate::scalar::Real;
use num_complex::Complex;

/// min / mean / max of `radius / bound`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioStats<T> {
    pub min: T,
    pub mean: T,
    pub max: T,
}

/// One trial of the study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusTrial<T> {
    pub seed: u64,
    pub radius: T,
    pub found_count: usize,
    /// Fewer distinct eigenvalues than the degree were found.
    pub lower_bound_only: bool,
    pub max_residual: T,
}

/// Spectral radii of sampled `D(n,k,p)` against `B n^{(k-1)/2} √(ln n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusStudyRow<T> {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub trials: usize,
    pub radius_samples: Vec<T>,
    pub per_trial: Vec<RadiusTrial<T>>,
    pub bound_constant: T,
    pub bound_value: T,
    /// Undefined (NaN) at `n = 1`, where `√(ln n) = 0`.
    pub ratio_stats: RatioStats<T>,
    pub expected_count: u64,
    /// Trials whose solver returned an error.
    pub solver_failures: usize,
}

/// `B n^{(k-1)/2} √(ln n)`.
pub fn radius_bound<T: Real>(b: T, n: usize, k: usize) -> T {
    let nf = T::lit(n as f64);
    b * nf.powf(T::lit((k as f64 - 1.0) / 2.0)) * nf.ln().sqrt()
}

/// For each `n`, samples `D(n,k,p)` `trials` times, enumerates its eigenpairs
/// and records the largest eigenvalue modulus.
///
/// Trial `i` at dimension `n` draws `D` with `derive_seed(derive_seed(seed, n), i)`
/// and runs the solver with that same seed.
pub fn radius_scaling_study<T: Real>(
    k: usize,
    n_list: &[usize],
    p: f64,
    trials: usize,
    bound_constant: T,
    seed: u64,
    params: &SolverParams<T>,
) -> Result<Vec<RadiusStudyRow<T>>> {
    if trials == 0 {
        return Err(Error::param("trials must be positive"));
    }
    if n_list.is_empty() {
        return Err(Error::param("empty dimension list"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param(format!("probability p={p} must lie in (0,1)")));
    }
    for &n in n_list {
        if n == 0 || k < 2 {
            return Err(Error::param(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
        }
        let expected = expected_eigenvalue_count(n, k)?;
        if expected > MAX_EXPECTED_COUNT {
            return Err(Error::capacity(
                "eigenpair enumeration (n(k-1)^(n-1))",
                expected as u128,
                MAX_EXPECTED_COUNT as u128,
            ));
        }
    }
    n_list
        .iter()
        .map(|&n| study_row(k, n, p, trials, bound_constant, derive_seed(seed, n as u64), params))
        .collect()
}

/// `D(n,k,p)`; below `n = k` there are no `k`-subsets, the hypergraph is
/// empty and `D = pJ`.
fn gap_sample<T: Real>(n: usize, k: usize, p: f64, seed: u64) -> Result<SymmetricHypermatrix<Complex<T>>> {
    if n < k {
        Ok(SymmetricHypermatrix::all_ones(n, k)?.scale(&Complex::new(T::lit(p), T::zero())))
    } else {
        random_gap(n, k, p, seed)
    }
}

fn study_row<T: Real>(
    k: usize,
    n: usize,
    p: f64,
    trials: usize,
    bound_constant: T,
    seed: u64,
    params: &SolverParams<T>,
) -> Result<RadiusStudyRow<T>> {
    let outcomes: Vec<Result<RadiusTrial<T>>> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i as u64);
            let d = gap_sample::<T>(n, k, p, s)?;
            let report = enumerate_eigenpairs(&d, &SolverParams { seed: s, ..*params })?;
            if report.eigenvalues.is_empty() {
                return Err(Error::Solver("no start converged".into()));
            }
            Ok(RadiusTrial {
                seed: s,
                radius: report.radius,
                found_count: report.found_count,
                lower_bound_only: !report.is_complete(),
                max_residual: report.pairs.iter().map(|q| q.residual).fold(T::zero(), T::max),
            })
        })
        .collect();
    let mut per_trial = Vec::with_capacity(trials);
    let mut solver_failures = 0;
    for o in outcomes {
        match o {
            Ok(t) => per_trial.push(t),
            Err(Error::Solver(_)) => solver_failures += 1,
            Err(e) => return Err(e),
        }
    }
    let radius_samples: Vec<T> = per_trial.iter().map(|t| t.radius).collect();
    let bound_value = radius_bound(bound_constant, n, k);
    let ratios: Vec<T> = radius_samples.iter().map(|&r| r / bound_value).collect();
    let ratio_stats = if ratios.is_empty() {
        RatioStats {
            min: T::nan(),
            mean: T::nan(),
            max: T::nan(),
        }
    } else {
        RatioStats {
            min: ratios.iter().copied().fold(T::infinity(), T::min),
            mean: ratios.iter().copied().sum::<T>() / T::lit(ratios.len() as f64),
            max: ratios.iter().copied().fold(T::neg_infinity(), T::max),
        }
    };
    Ok(RadiusStudyRow {
        n,
        k,
        p,
        trials: radius_samples.len(),
        radius_samples,
        per_trial,
        bound_constant,
        bound_value,
        ratio_stats,
        expected_count: expected_eigenvalue_count(n, k)?,
        solver_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_formula() {
        let b = radius_bound(10.0f64, 4, 3);
        assert!((b - 10.0 * 4.0 * 4f64.ln().sqrt()).abs() < 1e-12);
        assert_eq!(radius_bound(1.0f64, 1, 3), 0.0);
    }

    #[test]
    fn rejects_zero_trials_and_capacity() {
        let sp = SolverParams::default();
        assert!(matches!(
            radius_scaling_study(3, &[3], 0.5, 0, 10.0f64, 1, &sp),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            radius_scaling_study(3, &[8], 0.5, 1, 10.0f64, 1, &sp),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn small_study() {
        let rows = radius_scaling_study(3, &[3], 0.5, 6, 10.0f64, 7, &SolverParams::default()).unwrap();
        let row = &rows[0];
        assert_eq!(row.trials, 6);
        assert_eq!(row.radius_samples.len(), 6);
        assert_eq!(row.expected_count, 12);
        for t in &row.per_trial {
            assert!(t.radius.is_finite() && t.radius >= 0.0);
            assert!(t.found_count <= 12);
            assert!(t.max_residual < 1e-8);
        }
        assert!(row.ratio_stats.min <= row.ratio_stats.mean && row.ratio_stats.mean <= row.ratio_stats.max);
        let again = radius_scaling_study(3, &[3], 0.5, 6, 10.0f64, 7, &SolverParams::default()).unwrap();
        assert_eq!(rows, again);
    }

    #[test]
    fn below_order_is_scaled_ones() {
        let rows = radius_scaling_study(3, &[2], 0.5, 3, 1.0f64, 0, &SolverParams::default()).unwrap();
        // ρ(J_2^3) = 4
        for r in &rows[0].radius_samples {
            assert!((r - 2.0).abs() < 1e-9);
        }
    }

    #[test]
    fn near_one_probability_entries() {
        let p = 1.0 - 1e-9;
        let d = random_gap::<f64>(5, 3, p, 3).unwrap();
        for (idx, &x) in d.iter() {
            if crate::combinatorics::all_distinct(&idx) {
                assert!(x.abs() < 1e-8 || (x - 1.0).abs() < 1e-8);
            } else {
                assert!((x - 1.0).abs() < 1e-8);
            }
        }
    }
}
