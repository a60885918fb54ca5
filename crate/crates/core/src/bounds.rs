//! Closed-form spectral radius bounds.
//!
//! Row sums bracket the spectral radius of an entrywise nonnegative
//! hypermatrix: `min_j Σ a_{j i2..ik} <= ρ(A) <= max_j Σ a_{j i2..ik}`. The
//! bracket is only meaningful when [`RowSumBounds::nonnegative`] is set.
//!
//! Counting identities are evaluated in checked 64-bit integer arithmetic and
//! returned as exact rationals before any conversion to floating point.

use num_complex::Complex;
use num_rational::Ratio;
use serde::Serialize;

use crate::combinatorics::{checked_factorial, checked_falling_factorial, checked_pow, orderings};
use crate::error::{Error, Result};
use crate::hypermatrix::SymmetricHypermatrix;
use crate::scalar::{from_count, norm2, Real, Scalar};

/// Per-row slice sums of a cubical hypermatrix and their extremes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RowSumBounds<R> {
    pub per_row: Vec<R>,
    pub min: R,
    pub max: R,
    /// Whether every entry was real and nonnegative.
    pub nonnegative: bool,
}

impl<R: PartialOrd + Clone> RowSumBounds<R> {
    fn from_rows(per_row: Vec<R>, nonnegative: bool) -> Self {
        let mut min = per_row[0].clone();
        let mut max = per_row[0].clone();
        for r in &per_row[1..] {
            if *r < min {
                min = r.clone();
            }
            if *r > max {
                max = r.clone();
            }
        }
        Self {
            per_row,
            min,
            max,
            nonnegative,
        }
    }

    /// True when the bracket pins the spectral radius to a single value.
    pub fn is_regular(&self) -> bool {
        self.min == self.max
    }
}

/// `A : 1^{⊗(k-1)}` evaluated on compact storage.
///
/// Consecutive stored entries are usually equal, so multiplicities are
/// accumulated as integers per row and folded into the scalar only when the
/// entry value changes.
pub fn row_totals<S: Scalar>(a: &SymmetricHypermatrix<S>) -> Vec<S> {
    let n = a.dim();
    let k = a.order() as u64;
    let mut totals = vec![S::zero(); n];
    let mut pending: Vec<(S, u64)> = vec![(S::zero(), 0); n];
    for (idx, value) in a.iter() {
        if *value == S::zero() {
            continue;
        }
        let total = orderings(&idx);
        let mut j = 0;
        while j < idx.len() {
            let mut mult = 1;
            while j + mult < idx.len() && idx[j + mult] == idx[j] {
                mult += 1;
            }
            let row = idx[j];
            let weight = total * mult as u64 / k;
            let slot = &mut pending[row];
            if slot.0 == *value {
                slot.1 += weight;
            } else {
                if slot.1 > 0 {
                    totals[row] = totals[row].clone() + slot.0.clone() * from_count::<S>(slot.1);
                }
                *slot = (value.clone(), weight);
            }
            j += mult;
        }
    }
    for (row, (value, count)) in pending.into_iter().enumerate() {
        if count > 0 {
            totals[row] = totals[row].clone() + value * from_count::<S>(count);
        }
    }
    totals
}

/// Row sums of a complex hypermatrix, reported by real part.
pub fn row_sums<T: Real>(a: &SymmetricHypermatrix<Complex<T>>) -> RowSumBounds<T> {
    let rows = row_totals(a).into_iter().map(|z| z.re).collect();
    RowSumBounds::from_rows(rows, a.is_nonnegative())
}

/// Row sums over an ordered scalar (plain floats or exact rationals).
pub fn row_sums_ordered<S: Scalar + PartialOrd>(a: &SymmetricHypermatrix<S>) -> RowSumBounds<S> {
    let nonnegative = a.values().iter().all(|x| *x >= S::zero());
    RowSumBounds::from_rows(row_totals(a), nonnegative)
}

fn check_gap_params(n: u64, k: u64) -> Result<()> {
    if k < 2 || n <= k {
        return Err(Error::param(format!("need n > k >= 2, got n={n}, k={k}")));
    }
    Ok(())
}

/// Number of `k`-tuples starting at a fixed vertex that repeat some index:
/// `(n-1)^{k-1} - (n-1)(n-2)...(n-k+1)`.
pub fn repeated_tuple_count(n: u64, k: u64) -> Result<u64> {
    check_gap_params(n, k)?;
    let all = checked_pow(n - 1, (k - 1) as u32)?;
    let distinct = checked_falling_factorial(n - 1, k - 1)?;
    Ok(all - distinct)
}

/// Number of `k`-tuples starting at a fixed vertex `j` that repeat some index,
/// with the tail ranging over all of `[n]`: `n^{k-1} - (n-1)(n-2)...(n-k+1)`.
pub fn anchored_repeat_count(n: u64, k: u64) -> Result<u64> {
    check_gap_params(n, k)?;
    let all = checked_pow(n, (k - 1) as u32)?;
    let distinct = checked_falling_factorial(n - 1, k - 1)?;
    Ok(all - distinct)
}

/// Exact common row sum of `B(n,k)`: `anchored_repeat_count / (k-1)!`.
pub fn complete_gap_row_sum(n: u64, k: u64) -> Result<Ratio<u64>> {
    let count = anchored_repeat_count(n, k)?;
    Ok(Ratio::new(count, checked_factorial(k - 1)?))
}

/// `repeated_tuple_count / (k-1)!`, the row-sum value used by the bound's counting argument.
pub fn counted_row_sum(n: u64, k: u64) -> Result<Ratio<u64>> {
    let count = repeated_tuple_count(n, k)?;
    Ok(Ratio::new(count, checked_factorial(k - 1)?))
}

/// Exact bound `(n-1)^{k-2} / (k-2)!` on `ρ(B(n,k))`.
pub fn complete_gap_bound_exact(n: u64, k: u64) -> Result<Ratio<u64>> {
    check_gap_params(n, k)?;
    Ok(Ratio::new(
        checked_pow(n - 1, (k - 2) as u32)?,
        checked_factorial(k - 2)?,
    ))
}

pub fn complete_gap_bound(n: u64, k: u64) -> Result<f64> {
    let r = complete_gap_bound_exact(n, k)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}

/// Both sides of `‖v^{∘(k-1)}‖₂ >= ‖v‖₂² n^{1-k/2}` for a unit vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderCheck<T> {
    pub lhs: T,
    pub bound: T,
}

impl<T: Real> HolderCheck<T> {
    pub fn holds(&self, slack: T) -> bool {
        self.lhs >= self.bound - slack
    }
}

pub fn hadamard_power_lower_bound<T: Real>(v: &[Complex<T>], k: usize) -> Result<HolderCheck<T>> {
    if k < 2 {
        return Err(Error::param(format!("order k={k} must be >= 2")));
    }
    let norm = norm2(v);
    if (norm - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::Precondition(format!("vector must have unit 2-norm, has {norm}")));
    }
    let powered: Vec<Complex<T>> = v.iter().map(|z| z.powu(k as u32 - 1)).collect();
    let n = T::from_usize(v.len()).expect("dimension fits");
    Ok(HolderCheck {
        lhs: norm2(&powered),
        bound: n.powf(T::one() - T::lit(k as f64) / T::lit(2.0)),
    })
}
