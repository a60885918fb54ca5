use num_complex::Complex;
use serde::Serialize;

use crate::combinatorics::ColexSubsets;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_MERGE_TOL: f64 = 1e-6;
/// Relative to the largest `|Δ_m|` of the profile.
pub const DEFAULT_ZERO_TOL: f64 = 1e-8;
/// Evaluating every `Δ_m` visits all `2^r` subsets of the roots.
pub const MAX_DISCRIMINANT_ROOTS: usize = 22;

/// Discriminant profile of a list of roots.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantProfile<T> {
    /// Tolerance-distinct roots.
    pub roots: Vec<Complex<T>>,
    /// `delta[m - 1] = Δ_m` for `m = 1..=roots.len()`.
    pub delta: Vec<Complex<T>>,
    /// Largest `m` with `|Δ_m|` above the threshold.
    pub distinct_count: usize,
    /// The absolute threshold actually applied.
    pub threshold: T,
}

/// `Δ_m = Σ_{|S| = m} Π_{i, j ∈ S, i ≠ j} (λ_i - λ_j)²`, the product over ordered pairs.
pub fn generalized_discriminant<T: Real>(roots: &[Complex<T>], m: usize) -> Result<Complex<T>> {
    if m == 0 || m > roots.len() {
        return Err(Error::param(format!(
            "subset size m={m} must lie in 1..={}",
            roots.len()
        )));
    }
    let one = Complex::new(T::one(), T::zero());
    let mut total = Complex::new(T::zero(), T::zero());
    for subset in ColexSubsets::new(roots.len(), m) {
        let mut prod = one;
        for (a, &i) in subset.iter().enumerate() {
            for &j in &subset[a + 1..] {
                let d = roots[i] - roots[j];
                let d2 = d * d;
                // (i, j) and (j, i) both contribute (λ_i - λ_j)²
                prod = prod * d2 * d2;
            }
        }
        total = total + prod;
    }
    Ok(total)
}

/// Greedy tolerance merge, keeping the first root of each cluster, in input order.
pub fn merge_roots<T: Real>(roots: &[Complex<T>], merge_tol: T) -> Vec<Complex<T>> {
    let mut kept: Vec<Complex<T>> = Vec::new();
    for &r in roots {
        let dup = kept
            .iter()
            .any(|&q| (q - r).norm() <= merge_tol * T::one().max(q.norm()).max(r.norm()));
        if !dup {
            kept.push(r);
        }
    }
    kept
}

/// Merges `roots` at relative `merge_tol`, evaluates `Δ_1..Δ_r` on the merged
/// set, and returns the largest `m` with `|Δ_m| > zero_tol · max |Δ|`.
pub fn distinct_root_count<T: Real>(roots: &[Complex<T>], merge_tol: T, zero_tol: T) -> Result<DiscriminantProfile<T>> {
    if roots.is_empty() {
        return Err(Error::param("no roots given"));
    }
    let merged = merge_roots(roots, merge_tol);
    if merged.len() > MAX_DISCRIMINANT_ROOTS {
        return Err(Error::capacity(
            "generalized discriminants (2^r subsets)",
            1u128 << merged.len(),
            1u128 << MAX_DISCRIMINANT_ROOTS,
        ));
    }
    let delta = (1..=merged.len())
        .map(|m| generalized_discriminant(&merged, m))
        .collect::<Result<Vec<_>>>()?;
    let largest = delta
        .iter()
        .map(|d| d.norm())
        .filter(|x| x.is_finite())
        .fold(T::zero(), T::max);
    let threshold = zero_tol * largest;
    let distinct_count = delta
        .iter()
        .rposition(|d| !(d.norm() <= threshold))
        .map_or(0, |i| i + 1);
    Ok(DiscriminantProfile {
        roots: merged,
        delta,
        distinct_count,
        threshold,
    })
}
