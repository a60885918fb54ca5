use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::hadamard_power_lower_bound;
use crate::error::{Error, Result};
use crate::experiments::uniform_unit;
use crate::hypermatrix::normalize_unit;
use crate::rng::{complex_gaussian, derive_seed, stream};
use crate::scalar::Real;

/// Result of checking `‖v^{∘(k-1)}‖₂ >= n^{1-k/2}` on random unit vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderSweep<T> {
    pub n: usize,
    pub k: usize,
    /// Random vectors checked, the uniform vector excluded.
    pub samples: usize,
    pub violations: usize,
    /// Smallest `lhs / bound` seen.
    pub min_ratio: T,
    /// `|lhs - bound|` at `1̂/√n`.
    pub uniform_gap: T,
}

/// Draws `samples` complex Gaussian unit vectors plus the uniform vector and
/// counts violations of the Hölder lower bound (allowing a few ulps).
pub fn holder_sweep<T: Real>(n: usize, k: usize, samples: usize, seed: u64) -> Result<HolderSweep<T>> {
    if samples == 0 || n == 0 {
        return Err(Error::param("need n >= 1 and at least one sample"));
    }
    let slack = T::epsilon() * T::lit(16.0);
    let uniform = hadamard_power_lower_bound(&uniform_unit::<T>(n), k)?;
    let checks = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(derive_seed(seed, i as u64));
            let v: Vec<Complex<T>> = loop {
                if let Ok(v) = normalize_unit(&complex_gaussian::<T>(&mut rng, n)) {
                    break v;
                }
            };
            hadamard_power_lower_bound(&v, k)
        })
        .collect::<Result<Vec<_>>>()?;
    let violations = checks
        .iter()
        .chain(std::iter::once(&uniform))
        .filter(|c| !c.holds(slack * c.bound))
        .count();
    let min_ratio = checks
        .iter()
        .chain(std::iter::once(&uniform))
        .map(|c| c.lhs / c.bound)
        .fold(T::infinity(), T::min);
    Ok(HolderSweep {
        n,
        k,
        samples,
        violations,
        min_ratio,
        uniform_gap: (uniform.lhs - uniform.bound).abs(),
    })
}
