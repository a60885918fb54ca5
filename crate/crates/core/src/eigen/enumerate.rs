use num_complex::Complex;
use rayon::prelude::*;

use super::newton::{EigenSystem, NewtonOutcome};
use super::{EigenPair, SolverParams, SpectrumReport};
use crate::combinatorics::checked_pow;
use crate::error::{Error, Result};
use crate::hypermatrix::{normalize_unit, SymmetricHypermatrix};
use crate::rng::{complex_gaussian, derive_seed, stream};
use crate::scalar::{hdot, Real};

/// Largest characteristic degree `n(k-1)^{n-1}` accepted by the enumerator.
pub const MAX_EXPECTED_COUNT: u64 = 200;

/// Degree `n(k-1)^{n-1}` of the characteristic polynomial.
pub fn expected_eigenvalue_count(n: usize, k: usize) -> Result<u64> {
    if k < 2 || n == 0 {
        return Err(Error::param(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    let p = checked_pow(k as u64 - 1, n as u32 - 1)?;
    p.checked_mul(n as u64)
        .ok_or_else(|| Error::Overflow(format!("n(k-1)^(n-1) for n={n}, k={k}")))
}

pub(crate) fn lambda_close<T: Real>(a: Complex<T>, b: Complex<T>, rel: T) -> bool {
    (a - b).norm() <= rel * T::one().max(a.norm()).max(b.norm())
}

fn same_direction<T: Real>(u: &[Complex<T>], w: &[Complex<T>], tol: T) -> bool {
    hdot(u, w).norm() >= T::one() - tol
}

/// Multistart damped Newton enumeration of eigenpairs.
///
/// Starts are complex Gaussian vectors projected onto a random affine chart.
/// Converged solutions are normalized to unit 2-norm, clustered by eigenvalue
/// at relative tolerance `dedup_tol`, and within each cluster collapsed when
/// their vectors agree up to a complex phase.
pub fn enumerate_eigenpairs<T: Real>(
    a: &SymmetricHypermatrix<Complex<T>>,
    params: &SolverParams<T>,
) -> Result<SpectrumReport<T>> {
    let n = a.dim();
    let k = a.order();
    let expected = expected_eigenvalue_count(n, k)?;
    if expected > MAX_EXPECTED_COUNT {
        return Err(Error::capacity(
            "eigenpair enumeration (n(k-1)^(n-1))",
            expected as u128,
            MAX_EXPECTED_COUNT as u128,
        ));
    }
    let starts = params.num_starts.unwrap_or(20 * expected as usize);
    if starts == 0 {
        return Err(Error::param("num_starts must be positive"));
    }
    let scale = a.max_abs() * T::lit(n as f64).powi(k as i32 / 2);
    let outcomes: Vec<NewtonOutcome<T>> = (0..starts)
        .into_par_iter()
        .filter_map(|s| {
            let mut rng = stream(derive_seed(params.seed, s as u64));
            let system = EigenSystem::new(a, complex_gaussian(&mut rng, n));
            let v0 = system.to_chart(&complex_gaussian(&mut rng, n))?;
            let l0 = if s % 2 == 0 {
                system.lambda_guess(&v0)
            } else {
                complex_gaussian::<T>(&mut rng, 1)[0] * scale
            };
            system.correct(&v0, l0, params.max_newton_iters, params.newton_tol)
        })
        .collect();
    let converged = outcomes.len();
    if converged == 0 {
        return Err(Error::Solver(format!("none of {starts} Newton starts converged")));
    }
    let mut candidates = Vec::with_capacity(converged);
    for o in outcomes {
        let v = normalize_unit(&o.v)?;
        candidates.push(EigenPair::new(a, v, o.lambda, params.degeneracy_tol)?);
    }
    let (pairs, eigenvalues) = deduplicate(candidates, params.dedup_tol);
    Ok(SpectrumReport::from_clusters(
        pairs,
        eigenvalues,
        expected,
        starts,
        converged,
    ))
}

/// Sorts by `(Re λ, Im λ)`, clusters eigenvalues and collapses projective duplicates.
pub(crate) fn deduplicate<T: Real>(
    mut candidates: Vec<EigenPair<T>>,
    dedup_tol: T,
) -> (Vec<EigenPair<T>>, Vec<Complex<T>>) {
    candidates.sort_by(|x, y| {
        x.lambda
            .re
            .partial_cmp(&y.lambda.re)
            .unwrap()
            .then(x.lambda.im.partial_cmp(&y.lambda.im).unwrap())
            .then(x.residual.partial_cmp(&y.residual).unwrap())
    });
    let mut clusters: Vec<Vec<EigenPair<T>>> = Vec::new();
    for cand in candidates {
        match clusters
            .iter_mut()
            .find(|c| lambda_close(c[0].lambda, cand.lambda, dedup_tol))
        {
            Some(c) => c.push(cand),
            None => clusters.push(vec![cand]),
        }
    }
    let mut pairs = Vec::new();
    let mut values = Vec::with_capacity(clusters.len());
    for cluster in clusters {
        let best = cluster
            .iter()
            .min_by(|x, y| x.residual.partial_cmp(&y.residual).unwrap())
            .expect("clusters are nonempty");
        values.push(best.lambda);
        let mut kept: Vec<EigenPair<T>> = Vec::new();
        for p in cluster {
            if !kept.iter().any(|q| same_direction(&q.v, &p.v, T::lit(1e-6))) {
                kept.push(p);
            }
        }
        pairs.extend(kept);
    }
    let cmp = |x: &Complex<T>, y: &Complex<T>| x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap());
    values.sort_by(cmp);
    pairs.sort_by(|x, y| cmp(&x.lambda, &y.lambda));
    (pairs, values)
}
