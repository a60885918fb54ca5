//! Cubical hypermatrices: compact symmetric storage, dense general storage,
//! and the algebra between them (Hadamard and tensor products, contractions,
//! vector powers, index permutation, norms).

mod general;
mod json;
mod norms;
mod ops;
mod symmetric;

pub use general::GeneralHypermatrix;
pub use json::HypermatrixJson;
pub use norms::{knorm, normalize_unit, vector_power_sum};
pub(crate) use ops::{apply_k_minus_1, apply_k_minus_2};
pub use ops::{
    apply_vector_power, contract, contract_symmetric, entry_power_sum, frobenius, tensor_power, tensor_power_vector,
    tensor_product,
};
pub use symmetric::SymmetricHypermatrix;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default absolute tolerance for hypermatrix equality comparisons.
pub const DEFAULT_EQ_TOL: f64 = 1e-12;

/// A multiindex `(i_1, ..., i_k)` stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    /// Builds a 0-based multiindex, checking every entry lies in `0..n`.
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&i| i >= n) {
            return Err(Error::param(format!("index {bad} out of range for dimension {n}")));
        }
        Ok(Self(entries))
    }

    /// Builds from the 1-based labels used by external formats.
    pub fn from_one_based(labels: &[usize], n: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(labels.len());
        for &l in labels {
            if l == 0 || l > n {
                return Err(Error::param(format!("label {l} outside 1..={n}")));
            }
            entries.push(l - 1);
        }
        Ok(Self(entries))
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn sorted(&self) -> Self {
        let mut v = self.0.clone();
        v.sort_unstable();
        Self(v)
    }
}

impl AsRef<[usize]> for MultiIndex {
    fn as_ref(&self) -> &[usize] {
        &self.0
    }
}

/// Read access shared by both storage layouts.
pub trait HypermatrixView<S: Scalar> {
    fn order(&self) -> usize;
    fn dim(&self) -> usize;

    /// Entry at a 0-based multiindex of length `order()`.
    fn entry(&self, idx: &[usize]) -> S;

    fn shape_matches(&self, other: &impl HypermatrixView<S>) -> bool {
        self.order() == other.order() && self.dim() == other.dim()
    }

    /// Dense expansion over all `n^k` multiindices.
    fn to_dense(&self) -> Result<GeneralHypermatrix<S>> {
        GeneralHypermatrix::from_fn(self.dim(), self.order(), |idx| self.entry(idx))
    }
}

pub(crate) fn check_same_shape<S: Scalar>(a: &impl HypermatrixView<S>, b: &impl HypermatrixView<S>) -> Result<()> {
    if a.shape_matches(b) {
        Ok(())
    } else {
        Err(Error::shape(format!(
            "order {} dim {} vs order {} dim {}",
            a.order(),
            a.dim(),
            b.order(),
            b.dim()
        )))
    }
}
