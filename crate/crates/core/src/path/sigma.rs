use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypermatrix::{apply_k_minus_1, normalize_unit, SymmetricHypermatrix};
use crate::rng::{complex_gaussian, derive_seed, real_gaussian, stream};
use crate::scalar::{complexify, dot, hdot, Real};

/// Domain `Σ` over which `|B : v^{⊗k}|` is maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaDomain {
    /// Unit 2-sphere of `ℂⁿ`.
    #[default]
    ComplexSphere,
    /// Unit 2-sphere of `ℝⁿ`.
    RealSphere,
}

/// Multistart estimate of `sup_{v ∈ Σ} |B : v^{⊗k}|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaNormEstimate<T> {
    /// `|B : argmax^{⊗k}|`, a lower bound on the supremum.
    pub value: T,
    pub argmax_vector: Vec<Complex<T>>,
    pub starts_used: usize,
    pub domain: SigmaDomain,
    /// Always `"modulus"`: the objective is `|B : v^{⊗k}|`.
    pub objective: &'static str,
}

const ASCENT_ITERS: usize = 500;

fn objective<T: Real>(b: &SymmetricHypermatrix<Complex<T>>, v: &[Complex<T>]) -> (T, Complex<T>, Vec<Complex<T>>) {
    let y = apply_k_minus_1(b, v);
    let g = dot(&y, v);
    (g.norm(), g, y)
}

/// Projected gradient ascent of `|B : v^{⊗k}|` on the sphere with backtracking.
fn ascend<T: Real>(
    b: &SymmetricHypermatrix<Complex<T>>,
    mut v: Vec<Complex<T>>,
    domain: SigmaDomain,
) -> (T, Vec<Complex<T>>) {
    let (mut f, mut g, mut y) = objective(b, &v);
    let mut eta = T::one();
    for _ in 0..ASCENT_ITERS {
        if g.norm() == T::zero() {
            break;
        }
        // ∂|g|/∂v̄ ∝ conj(y) · g / |g|
        let phase = g / g.norm();
        let mut d: Vec<Complex<T>> = y.iter().map(|yi| yi.conj() * phase).collect();
        if domain == SigmaDomain::RealSphere {
            d.iter_mut().for_each(|z| *z = Complex::new(z.re, T::zero()));
        }
        let radial = hdot(&v, &d).re;
        d.iter_mut().zip(&v).for_each(|(di, vi)| *di = *di - vi * radial);
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<Complex<T>> = v.iter().zip(&d).map(|(vi, di)| vi + di * eta).collect();
            let Ok(trial) = normalize_unit(&trial) else { break };
            let (tf, tg, ty) = objective(b, &trial);
            if tf > f {
                let gain = tf - f;
                v = trial;
                f = tf;
                g = tg;
                y = ty;
                eta = eta * T::lit(2.0);
                improved = gain > T::epsilon() * T::lit(4.0) * f;
                break;
            }
            eta = eta * T::lit(0.5);
        }
        if !improved {
            break;
        }
    }
    (f, v)
}

/// Lower bound on `‖B‖_Σ` from `num_starts` random starts plus the uniform
/// vector and the standard basis vectors, each refined by projected ascent.
pub fn sigma_norm_estimate<T: Real>(
    b: &SymmetricHypermatrix<Complex<T>>,
    num_starts: usize,
    domain: SigmaDomain,
    seed: u64,
) -> Result<SigmaNormEstimate<T>> {
    if b.order() < 1 {
        return Err(Error::param("Σ-norm needs order >= 1"));
    }
    let n = b.dim();
    let mut starts: Vec<Vec<Complex<T>>> = Vec::with_capacity(num_starts + n + 1);
    starts.push(complexify(&vec![T::one() / T::lit(n as f64).sqrt(); n]));
    for j in 0..n {
        let mut e = vec![T::zero(); n];
        e[j] = T::one();
        starts.push(complexify(&e));
    }
    for s in 0..num_starts {
        let mut rng = stream(derive_seed(seed, s as u64));
        let v = match domain {
            SigmaDomain::ComplexSphere => complex_gaussian(&mut rng, n),
            SigmaDomain::RealSphere => complexify(&real_gaussian::<T>(&mut rng, n)),
        };
        if let Ok(v) = normalize_unit(&v) {
            starts.push(v);
        }
    }
    let results: Vec<(T, Vec<Complex<T>>)> = starts.par_iter().map(|v| ascend(b, v.clone(), domain)).collect();
    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.0 > results[best].0 {
            best = i;
        }
    }
    let (value, argmax_vector) = results[best].clone();
    Ok(SigmaNormEstimate {
        value,
        argmax_vector,
        starts_used: results.len(),
        domain,
        objective: "modulus",
    })
}
