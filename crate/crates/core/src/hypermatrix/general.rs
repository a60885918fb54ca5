use num_complex::Complex;

use super::{check_same_shape, HypermatrixView};
use crate::combinatorics::{check_permutation, dense_offset, ensure_dense, permutations, DenseMultiindices};
use crate::error::{Error, Result};
use crate::scalar::{Real, Scalar};

/// Dense cubical hypermatrix over all `n^k` multiindices, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralHypermatrix<S> {
    order: usize,
    dim: usize,
    data: Vec<S>,
}

impl<S: Scalar> GeneralHypermatrix<S> {
    pub fn zeros(dim: usize, order: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dimension must be at least 1"));
        }
        let count = ensure_dense(dim, order, "general hypermatrix")?;
        Ok(Self {
            order,
            dim,
            data: vec![S::zero(); count as usize],
        })
    }

    pub fn from_vec(dim: usize, order: usize, data: Vec<S>) -> Result<Self> {
        let expected = ensure_dense(dim, order, "general hypermatrix")?;
        if data.len() as u128 != expected {
            return Err(Error::shape(format!(
                "{} entries supplied, {dim}^{order} = {expected} required",
                data.len()
            )));
        }
        Ok(Self { order, dim, data })
    }

    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> S) -> Result<Self> {
        let mut out = Self::zeros(dim, order)?;
        for (slot, idx) in out.data.iter_mut().zip(DenseMultiindices::new(dim, order)) {
            *slot = f(&idx);
        }
        Ok(out)
    }

    /// An order-1 hypermatrix holding a vector.
    pub fn vector(v: &[S]) -> Result<Self> {
        Self::from_vec(v.len(), 1, v.to_vec())
    }

    /// An order-0 hypermatrix holding a scalar.
    pub fn scalar(dim: usize, value: S) -> Result<Self> {
        Self::from_vec(dim, 0, vec![value])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn into_data(self) -> Vec<S> {
        self.data
    }

    pub fn get(&self, idx: &[usize]) -> S {
        self.data[dense_offset(self.dim, idx)].clone()
    }

    pub fn set(&mut self, idx: &[usize], value: S) -> Result<()> {
        if idx.len() != self.order || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::param(format!(
                "multiindex {idx:?} invalid for order {} dim {}",
                self.order, self.dim
            )));
        }
        let off = dense_offset(self.dim, idx);
        self.data[off] = value;
        Ok(())
    }

    pub(crate) fn data_mut(&mut self) -> &mut [S] {
        &mut self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        DenseMultiindices::new(self.dim, self.order).zip(self.data.iter())
    }

    pub fn map<R: Scalar>(&self, f: impl FnMut(&S) -> R) -> GeneralHypermatrix<R> {
        GeneralHypermatrix {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        check_same_shape(self, other)?;
        Ok(Self {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// Index permutation `M^σ`: the entry of `self` at `i` lands at
    /// `i^σ = (i_{σ(1)}, ..., i_{σ(k)})`.
    ///
    /// Composition follows `(M^σ)^τ = M^{σ∘τ}` with `(σ∘τ)(t) = σ(τ(t))`.
    pub fn permute_indices(&self, sigma: &[usize]) -> Result<Self> {
        check_permutation(sigma, self.order)?;
        let mut out = Self::zeros(self.dim, self.order)?;
        let mut image = vec![0usize; self.order];
        for (idx, v) in self.iter() {
            for (t, slot) in image.iter_mut().enumerate() {
                *slot = idx[sigma[t]];
            }
            let off = dense_offset(self.dim, &image);
            out.data[off] = v.clone();
        }
        Ok(out)
    }

    /// `Σ_{σ ∈ S_k} M^σ`, which is always symmetric.
    pub fn permutation_sum(&self) -> Result<Self> {
        let mut acc = Self::zeros(self.dim, self.order)?;
        for sigma in permutations(self.order) {
            acc = acc.add(&self.permute_indices(&sigma)?)?;
        }
        Ok(acc)
    }

    /// Exact symmetry test: every entry equals the entry at every permutation of its index.
    pub fn is_symmetric(&self) -> bool {
        let mut sorted = vec![0usize; self.order];
        self.iter().all(|(idx, v)| {
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            self.get(&sorted) == *v
        })
    }
}

impl<S: Scalar> HypermatrixView<S> for GeneralHypermatrix<S> {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn entry(&self, idx: &[usize]) -> S {
        self.get(idx)
    }

    fn to_dense(&self) -> Result<GeneralHypermatrix<S>> {
        Ok(self.clone())
    }
}

impl<T: Real> GeneralHypermatrix<Complex<T>> {
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.order == other.order
            && self.dim == other.dim
            && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Symmetry test at absolute tolerance.
    pub fn is_symmetric_within(&self, tol: T) -> bool {
        let mut sorted = vec![0usize; self.order];
        self.iter().all(|(idx, v)| {
            sorted.copy_from_slice(&idx);
            sorted.sort_unstable();
            (self.get(&sorted) - v).norm() <= tol
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutation_is_noop() {
        let a = GeneralHypermatrix::<i64>::from_fn(3, 3, |idx| (idx[0] * 9 + idx[1] * 3 + idx[2]) as i64).unwrap();
        assert_eq!(a.permute_indices(&[0, 1, 2]).unwrap(), a);
    }

    #[test]
    fn cycle_moves_nonzero_to_image_index() {
        // one nonzero at 1-based (1,2,3); σ = (2 3 1) in one-line notation
        let mut u = GeneralHypermatrix::<i64>::zeros(3, 3).unwrap();
        u.set(&[0, 1, 2], 1).unwrap();
        let sigma = [1, 2, 0];
        let moved = u.permute_indices(&sigma).unwrap();
        // i^σ = (i_2, i_3, i_1) = (2, 3, 1) in 1-based labels
        assert_eq!(moved.get(&[1, 2, 0]), 1);
        assert_eq!(moved.iter().filter(|(_, v)| **v != 0).count(), 1);
    }

    #[test]
    fn non_bijection_rejected() {
        let a = GeneralHypermatrix::<i64>::zeros(2, 3).unwrap();
        assert!(matches!(a.permute_indices(&[0, 0, 1]), Err(Error::Parameter(_))));
    }

    #[test]
    fn from_vec_checks_length() {
        assert!(GeneralHypermatrix::from_vec(2, 2, vec![1i64, 2, 3]).is_err());
        assert_eq!(GeneralHypermatrix::from_vec(2, 2, vec![1i64; 4]).unwrap().len(), 4);
    }
}
