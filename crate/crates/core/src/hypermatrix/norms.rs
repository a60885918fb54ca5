use num_complex::Complex;
use num_traits::pow;

use crate::error::{Error, Result};
use crate::scalar::{norm2, Real, Scalar};

/// The `p`-norm `(Σ |v_j|^p)^{1/p}` for real `p >= 1`.
pub fn knorm<T: Real>(v: &[Complex<T>], p: T) -> Result<T> {
    if !(p >= T::one()) {
        return Err(Error::param(format!("norm exponent {p} must be >= 1")));
    }
    if p == T::lit(2.0) {
        return Ok(norm2(v));
    }
    let sum: T = v.iter().map(|z| z.norm().powf(p)).sum();
    Ok(sum.powf(p.recip()))
}

/// `v / ‖v‖₂`; the zero vector cannot be normalized.
pub fn normalize_unit<T: Real>(v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    let norm = norm2(v);
    if norm == T::zero() || !norm.is_finite() {
        return Err(Error::Degenerate("cannot normalize a zero or non-finite vector".into()));
    }
    Ok(v.iter().map(|z| z / norm).collect())
}

/// `v^{:t} = Σ v_i^t`, the normalization functional of homogeneous eigenvectors.
pub fn vector_power_sum<S: Scalar>(v: &[S], t: u32) -> Result<S> {
    if t == 0 {
        return Err(Error::param("power t must be >= 1"));
    }
    Ok(v.iter().fold(S::zero(), |acc, x| acc + pow(x.clone(), t as usize)))
}
