//! Exact counting and enumeration of multiindices.
//!
//! Sorted (non-decreasing) multiindices are ranked through the bijection
//! `i_j -> i_j + j` onto strictly increasing tuples, which are then ranked
//! colexicographically by the combinatorial number system. Strictly increasing
//! tuples (hypergraph edges) use the same colex ranking directly.

use crate::error::{Error, Result};

/// Largest number of entries any dense enumeration is allowed to touch.
pub const DENSE_LIMIT: u128 = 100_000_000;

/// Exact binomial coefficient, `None` on `u64` overflow.
pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) / (i + 1) is always an integer
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    u64::try_from(acc).ok()
}

pub fn checked_binomial(n: u64, r: u64) -> Result<u64> {
    binomial(n, r).ok_or_else(|| Error::Overflow(format!("C({n},{r})")))
}

pub fn checked_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

pub fn checked_factorial(n: u64) -> Result<u64> {
    (1..=n).try_fold(1u64, |acc, i| {
        acc.checked_mul(i).ok_or_else(|| Error::Overflow(format!("{n}!")))
    })
}

/// Falling factorial `m (m-1) ... (m-r+1)`.
pub fn checked_falling_factorial(m: u64, r: u64) -> Result<u64> {
    if r > m {
        return Ok(0);
    }
    (0..r).try_fold(1u64, |acc, i| {
        acc.checked_mul(m - i)
            .ok_or_else(|| Error::Overflow(format!("falling factorial {m}_({r})")))
    })
}

/// `n^k` as `u128`, saturating.
pub fn dense_count(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(n as u128);
    }
    acc
}

/// Number of sorted multiindices of order `k` over `n` symbols, `C(n+k-1, k)`.
pub fn multiset_count(n: usize, k: usize) -> u128 {
    if n == 0 {
        return u128::from(k == 0);
    }
    binomial((n + k - 1) as u64, k as u64).map_or(u128::MAX, u128::from)
}

pub fn ensure_dense(n: usize, k: usize, what: &str) -> Result<u128> {
    let count = dense_count(n, k);
    if count > DENSE_LIMIT {
        return Err(Error::capacity(
            format!("{what} (dense {n}^{k} enumeration)"),
            count,
            DENSE_LIMIT,
        ));
    }
    Ok(count)
}

/// Table of binomial coefficients `C(a, b)` for `a < rows`, `b <= cols`.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    cols: usize,
    table: Vec<u64>,
}

impl BinomialTable {
    pub fn new(rows: usize, cols: usize) -> Self {
        let mut table = vec![0u64; rows * (cols + 1)];
        for a in 0..rows {
            table[a * (cols + 1)] = 1;
            for b in 1..=cols.min(a) {
                let up = table[(a - 1) * (cols + 1) + b - 1];
                let left = if b < a { table[(a - 1) * (cols + 1) + b] } else { 0 };
                table[a * (cols + 1) + b] = up.saturating_add(left);
            }
        }
        Self { cols, table }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        if b > self.cols {
            return 0;
        }
        self.table[a * (self.cols + 1) + b]
    }
}

/// Ranking of sorted multiindices of a fixed order and dimension.
#[derive(Debug, Clone)]
pub struct MultisetRanker {
    n: usize,
    k: usize,
    table: BinomialTable,
}

impl MultisetRanker {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            table: BinomialTable::new(n + k + 1, k + 1),
        }
    }

    pub fn len(&self) -> usize {
        multiset_count(self.n, self.k) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rank of a non-decreasing multiindex (0-based entries).
    #[inline]
    pub fn rank_sorted(&self, sorted: &[usize]) -> usize {
        debug_assert_eq!(sorted.len(), self.k);
        let mut r = 0u64;
        for (j, &i) in sorted.iter().enumerate() {
            r += self.table.get(i + j, j + 1);
        }
        r as usize
    }
}

/// Iterator over sorted multiindices of order `k` on `0..n` in rank order.
#[derive(Debug, Clone)]
pub struct SortedMultiindices {
    n: usize,
    current: Option<Vec<usize>>,
}

impl SortedMultiindices {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if n == 0 && k > 0 { None } else { Some(vec![0; k]) };
        Self { n, current }
    }
}

impl Iterator for SortedMultiindices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let k = next.len();
        let mut advanced = false;
        for j in 0..k {
            let limit = if j + 1 < k { next[j + 1] } else { self.n - 1 };
            if next[j] < limit {
                next[j] += 1;
                for x in next.iter_mut().take(j) {
                    *x = 0;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(cur)
    }
}

/// Iterator over strictly increasing `k`-tuples of `0..n` in colexicographic order.
#[derive(Debug, Clone)]
pub struct ColexSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl ColexSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if k <= n { Some((0..k).collect()) } else { None };
        Self { n, current }
    }
}

impl Iterator for ColexSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let k = next.len();
        let mut advanced = false;
        for j in 0..k {
            let limit = if j + 1 < k { next[j + 1] } else { self.n };
            if next[j] + 1 < limit {
                next[j] += 1;
                for (t, x) in next.iter_mut().enumerate().take(j) {
                    *x = t;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            self.current = Some(next);
        }
        Some(cur)
    }
}

/// Colex rank of a strictly increasing tuple.
pub fn colex_rank(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(j, &c)| binomial(c as u64, j as u64 + 1).unwrap_or(u64::MAX))
        .sum()
}

/// Iterator over all `n^k` multiindices in row-major order (first slot slowest).
#[derive(Debug, Clone)]
pub struct DenseMultiindices {
    n: usize,
    current: Option<Vec<usize>>,
}

impl DenseMultiindices {
    pub fn new(n: usize, k: usize) -> Self {
        let current = if n == 0 && k > 0 { None } else { Some(vec![0; k]) };
        Self { n, current }
    }
}

impl Iterator for DenseMultiindices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        let mut slot = next.len();
        while slot > 0 {
            slot -= 1;
            next[slot] += 1;
            if next[slot] < self.n {
                self.current = Some(next);
                return Some(cur);
            }
            next[slot] = 0;
        }
        Some(cur)
    }
}

/// Row-major linear offset of a multiindex.
#[inline]
pub fn dense_offset(n: usize, idx: &[usize]) -> usize {
    idx.iter().fold(0, |acc, &i| acc * n + i)
}

/// Number of distinct orderings of a sorted multiindex, `k! / Π mult!`.
pub fn orderings(sorted: &[usize]) -> u64 {
    let mut total = 0u64;
    let mut acc = 1u64;
    let mut j = 0;
    while j < sorted.len() {
        let mut run = 1;
        while j + run < sorted.len() && sorted[j + run] == sorted[j] {
            run += 1;
        }
        total += run as u64;
        acc = acc.saturating_mul(binomial(total, run as u64).unwrap_or(u64::MAX));
        j += run;
    }
    acc
}

/// True when every entry of the (sorted) multiindex is distinct.
pub fn all_distinct(sorted: &[usize]) -> bool {
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Validates that `sigma` is a bijection on `0..k`.
pub fn check_permutation(sigma: &[usize], k: usize) -> Result<()> {
    if sigma.len() != k {
        return Err(Error::param(format!(
            "permutation has length {}, expected {k}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; k];
    for &s in sigma {
        if s >= k || seen[s] {
            return Err(Error::param(format!("{sigma:?} is not a bijection on [{k}]")));
        }
        seen[s] = true;
    }
    Ok(())
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        out.push(perm.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(binomial(5, 3), Some(10));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(66, 33), Some(7219428434016265740));
        assert_eq!(binomial(100, 50), None);
        assert_eq!(checked_factorial(5).unwrap(), 120);
        assert!(checked_factorial(21).is_err());
        assert_eq!(checked_falling_factorial(4, 2).unwrap(), 12);
        assert_eq!(checked_falling_factorial(5, 3).unwrap(), 60);
        assert_eq!(checked_falling_factorial(2, 3).unwrap(), 0);
    }

    #[test]
    fn sorted_multiindices_are_ranked_in_order() {
        for (n, k) in [(1, 3), (3, 2), (4, 3), (5, 4), (2, 5)] {
            let ranker = MultisetRanker::new(n, k);
            let all: Vec<_> = SortedMultiindices::new(n, k).collect();
            assert_eq!(all.len() as u128, multiset_count(n, k));
            for (r, idx) in all.iter().enumerate() {
                assert!(idx.windows(2).all(|w| w[0] <= w[1]));
                assert_eq!(ranker.rank_sorted(idx), r, "n={n} k={k} idx={idx:?}");
            }
        }
    }

    #[test]
    fn colex_subsets_match_rank() {
        let all: Vec<_> = ColexSubsets::new(5, 3).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 1, 3]);
        assert_eq!(all[2], vec![0, 2, 3]);
        assert_eq!(all[3], vec![1, 2, 3]);
        for (r, s) in all.iter().enumerate() {
            assert_eq!(colex_rank(s), r as u64);
        }
        assert_eq!(ColexSubsets::new(2, 3).count(), 0);
    }

    #[test]
    fn dense_iteration_is_row_major() {
        let all: Vec<_> = DenseMultiindices::new(3, 2).collect();
        assert_eq!(all.len(), 9);
        for (off, idx) in all.iter().enumerate() {
            assert_eq!(dense_offset(3, idx), off);
        }
    }

    #[test]
    fn ordering_counts() {
        assert_eq!(orderings(&[0, 1, 2]), 6);
        assert_eq!(orderings(&[0, 0, 1]), 3);
        assert_eq!(orderings(&[2, 2, 2]), 1);
        assert_eq!(orderings(&[]), 1);
        assert_eq!(orderings(&[0, 0, 1, 1]), 6);
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(1), vec![vec![0]]);
        assert!(check_permutation(&[1, 2, 0], 3).is_ok());
        assert!(check_permutation(&[1, 1, 0], 3).is_err());
        assert!(check_permutation(&[0, 1], 3).is_err());
    }
}
