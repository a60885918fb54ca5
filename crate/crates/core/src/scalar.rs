//! Scalar abstractions.
//!
//! Hypermatrix storage and the purely algebraic operations are generic over
//! [`Scalar`], which covers complex floats, plain floats and exact rationals.
//! Numerical routines (norms, solvers, experiments) are generic over a real
//! floating type [`Real`] and operate on `Complex<Real>` entries.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Entry type of a hypermatrix: anything with ring arithmetic and integer embedding.
pub trait Scalar: Clone + PartialEq + Debug + Num + FromPrimitive + Send + Sync + 'static {}

impl<S> Scalar for S where S: Clone + PartialEq + Debug + Num + FromPrimitive + Send + Sync + 'static {}

/// Real floating-point type used by the numerical layer (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static {
    /// Lossy conversion from `f64`, used for tolerances and constants.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite real converts to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Embeds an unsigned integer count into a scalar.
pub(crate) fn from_count<S: Scalar>(c: u64) -> S {
    S::from_u64(c).expect("integer count representable in scalar type")
}

/// Squared 2-norm of a complex vector.
pub fn norm2_sqr<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// 2-norm of a complex vector.
pub fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    norm2_sqr(v).sqrt()
}

/// Bilinear (non-conjugating) dot product `Σ a_i b_i`.
pub fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x * y)
}

/// Hermitian inner product `Σ conj(a_i) b_i`.
pub fn hdot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x.conj() * y)
}

/// Lifts a real slice into complex numbers with exactly zero imaginary parts.
pub fn complexify<T: Real>(v: &[T]) -> Vec<Complex<T>> {
    v.iter().map(|&x| Complex::new(x, T::zero())).collect()
}
