use num_complex::Complex;

use super::{check_same_shape, GeneralHypermatrix, HypermatrixView};
use crate::combinatorics::{multiset_count, orderings, MultisetRanker, SortedMultiindices, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::scalar::{from_count, Real, Scalar};

/// Fully symmetric cubical hypermatrix stored by sorted multiindex.
///
/// Entry `r` of the backing vector holds the value at the `r`-th sorted
/// multiindex in rank order, so storage is `C(n+k-1, k)` rather than `n^k`.
#[derive(Debug, Clone)]
pub struct SymmetricHypermatrix<S> {
    order: usize,
    dim: usize,
    ranker: MultisetRanker,
    entries: Vec<S>,
}

impl<S: Scalar> PartialEq for SymmetricHypermatrix<S> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.dim == other.dim && self.entries == other.entries
    }
}

impl<S: Scalar> SymmetricHypermatrix<S> {
    /// Zero hypermatrix. Order 0 is a scalar; order 1 a vector.
    pub fn zeros(dim: usize, order: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::param("dimension must be at least 1"));
        }
        let count = multiset_count(dim, order);
        if count > DENSE_LIMIT {
            return Err(Error::capacity(
                format!("symmetric storage for n={dim}, k={order}"),
                count,
                DENSE_LIMIT,
            ));
        }
        Ok(Self {
            order,
            dim,
            ranker: MultisetRanker::new(dim, order),
            entries: vec![S::zero(); count as usize],
        })
    }

    /// Builds from a function of the sorted multiindex.
    pub fn from_fn(dim: usize, order: usize, mut f: impl FnMut(&[usize]) -> S) -> Result<Self> {
        let mut out = Self::zeros(dim, order)?;
        for (slot, idx) in out.entries.iter_mut().zip(SortedMultiindices::new(dim, order)) {
            *slot = f(&idx);
        }
        Ok(out)
    }

    fn check_constructor(dim: usize, order: usize) -> Result<()> {
        if dim < 1 {
            return Err(Error::param(format!("dimension n={dim} must be >= 1")));
        }
        if order < 2 {
            return Err(Error::param(format!("order k={order} must be >= 2")));
        }
        Ok(())
    }

    /// The identity `I_n^k`: ones on the diagonal, zero elsewhere.
    pub fn identity(dim: usize, order: usize) -> Result<Self> {
        Self::check_constructor(dim, order)?;
        Self::from_fn(
            dim,
            order,
            |idx| {
                if idx.first() == idx.last() {
                    S::one()
                } else {
                    S::zero()
                }
            },
        )
    }

    /// The all-ones hypermatrix `J_n^k`.
    pub fn all_ones(dim: usize, order: usize) -> Result<Self> {
        Self::check_constructor(dim, order)?;
        Self::from_fn(dim, order, |_| S::one())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of stored (sorted) entries.
    pub fn stored_len(&self) -> usize {
        self.entries.len()
    }

    pub fn values(&self) -> &[S] {
        &self.entries
    }

    /// Entry at an arbitrary multiindex; looks up its sorted representative.
    pub fn get(&self, idx: &[usize]) -> S {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        self.get_sorted(&sorted)
    }

    /// Entry at an already sorted multiindex.
    pub fn get_sorted(&self, sorted: &[usize]) -> S {
        self.entries[self.ranker.rank_sorted(sorted)].clone()
    }

    /// Sets the whole permutation orbit of `idx`.
    pub fn set(&mut self, idx: &[usize], value: S) -> Result<()> {
        if idx.len() != self.order || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::param(format!(
                "multiindex {idx:?} invalid for order {} dim {}",
                self.order, self.dim
            )));
        }
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let r = self.ranker.rank_sorted(&sorted);
        self.entries[r] = value;
        Ok(())
    }

    /// Iterates `(sorted multiindex, value)` in rank order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        SortedMultiindices::new(self.dim, self.order).zip(self.entries.iter())
    }

    pub(crate) fn rank(&self, sorted: &[usize]) -> usize {
        self.ranker.rank_sorted(sorted)
    }

    pub(crate) fn value_mut(&mut self, rank: usize) -> &mut S {
        &mut self.entries[rank]
    }

    pub fn map<R: Scalar>(&self, mut f: impl FnMut(&S) -> R) -> SymmetricHypermatrix<R> {
        SymmetricHypermatrix {
            order: self.order,
            dim: self.dim,
            ranker: self.ranker.clone(),
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        check_same_shape(self, other)?;
        Ok(Self {
            order: self.order,
            dim: self.dim,
            ranker: self.ranker.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    /// Entrywise product; symmetric in, symmetric out.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() * b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|a| a.clone() * c.clone())
    }

    /// `self + t * other`, with `t` applied entrywise.
    pub fn axpy(&self, t: &S, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + t.clone() * b.clone())
    }

    /// Number of entries, counted over all `n^k` multiindices, that are nonzero.
    pub fn dense_nonzero_count(&self) -> u128 {
        self.iter()
            .filter(|(_, v)| **v != S::zero())
            .map(|(idx, _)| u128::from(orderings(&idx)))
            .sum()
    }

    /// Sum over all `n^k` multiindices of the entries.
    pub fn dense_sum(&self) -> S {
        self.iter().fold(S::zero(), |acc, (idx, v)| {
            acc + v.clone() * from_count::<S>(orderings(&idx))
        })
    }
}

impl<S: Scalar> HypermatrixView<S> for SymmetricHypermatrix<S> {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn entry(&self, idx: &[usize]) -> S {
        self.get(idx)
    }
}

impl<T: Real> SymmetricHypermatrix<Complex<T>> {
    /// Lifts a real-valued hypermatrix; imaginary parts are exactly zero.
    pub fn from_real(real: &SymmetricHypermatrix<T>) -> Self {
        real.map(|&x| Complex::new(x, T::zero()))
    }

    /// Real parts, provided every imaginary part is exactly zero.
    pub fn real_part(&self) -> Option<SymmetricHypermatrix<T>> {
        if self.entries.iter().any(|z| z.im != T::zero()) {
            return None;
        }
        Some(self.map(|z| z.re))
    }

    /// True when all entries are real and `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|z| z.im == T::zero() && z.re >= T::zero())
    }

    /// Entrywise comparison at absolute tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.shape_matches(other)
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.entries.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    /// Scales by a real factor.
    pub fn scale_real(&self, c: T) -> Self {
        self.map(|z| z * c)
    }
}

impl<S: Scalar> SymmetricHypermatrix<S> {
    /// Dense copy as a general hypermatrix.
    pub fn to_general(&self) -> Result<GeneralHypermatrix<S>> {
        HypermatrixView::to_dense(self)
    }
}
