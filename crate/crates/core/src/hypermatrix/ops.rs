use num_traits::pow;

use super::{check_same_shape, GeneralHypermatrix, HypermatrixView, SymmetricHypermatrix};
use crate::combinatorics::{dense_offset, ensure_dense, orderings, DenseMultiindices, SortedMultiindices};
use crate::error::{Error, Result};
use crate::scalar::{from_count, Scalar};

/// Tensor product `(A ⊗ B)_{c} = A_{c_1..c_s} B_{c_{s+1}..c_{s+t}}`.
pub fn tensor_product<S: Scalar>(
    a: &impl HypermatrixView<S>,
    b: &impl HypermatrixView<S>,
) -> Result<GeneralHypermatrix<S>> {
    if a.dim() != b.dim() {
        return Err(Error::shape(format!(
            "tensor product of dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let s = a.order();
    GeneralHypermatrix::from_fn(a.dim(), s + b.order(), |idx| a.entry(&idx[..s]) * b.entry(&idx[s..]))
}

/// Iterated tensor power `X^{⊗m} = X ⊗ X^{⊗(m-1)}`, `m >= 1`.
pub fn tensor_power<S: Scalar>(x: &impl HypermatrixView<S>, m: usize) -> Result<GeneralHypermatrix<S>> {
    if m == 0 {
        return Err(Error::param("tensor power exponent must be >= 1"));
    }
    let mut acc = x.to_dense()?;
    for _ in 1..m {
        acc = tensor_product(x, &acc)?;
    }
    Ok(acc)
}

/// `v^{⊗m}` as a symmetric hypermatrix.
pub fn tensor_power_vector<S: Scalar>(v: &[S], m: usize) -> Result<SymmetricHypermatrix<S>> {
    SymmetricHypermatrix::from_fn(v.len(), m, |idx| {
        idx.iter().fold(S::one(), |acc, &i| acc * v[i].clone())
    })
}

/// Contraction `A :_S B` over the slot positions `slots` (0-based, distinct).
///
/// Free slots of `A` are filled by the output multiindex in increasing slot
/// order; the slots in `slots` are filled, in increasing order, by the
/// multiindex of `B`.
pub fn contract<S: Scalar>(
    a: &impl HypermatrixView<S>,
    slots: &[usize],
    b: &impl HypermatrixView<S>,
) -> Result<GeneralHypermatrix<S>> {
    let k = a.order();
    let n = a.dim();
    if slots.len() != b.order() {
        return Err(Error::param(format!(
            "{} contraction slots but B has order {}",
            slots.len(),
            b.order()
        )));
    }
    if b.dim() != n {
        return Err(Error::shape(format!("dimension {} vs {}", n, b.dim())));
    }
    let mut in_s = vec![false; k];
    for &s in slots {
        if s >= k || in_s[s] {
            return Err(Error::param(format!(
                "slots {slots:?} are not distinct positions in [{k}]"
            )));
        }
        in_s[s] = true;
    }
    ensure_dense(n, k, "contraction")?;
    let free: Vec<usize> = (0..k).filter(|&t| !in_s[t]).collect();
    let mut bound: Vec<usize> = slots.to_vec();
    bound.sort_unstable();

    let mut out = GeneralHypermatrix::<S>::zeros(n, free.len())?;
    let mut out_idx = vec![0usize; free.len()];
    let mut b_idx = vec![0usize; bound.len()];
    for idx in DenseMultiindices::new(n, k) {
        for (o, &t) in out_idx.iter_mut().zip(&free) {
            *o = idx[t];
        }
        for (o, &t) in b_idx.iter_mut().zip(&bound) {
            *o = idx[t];
        }
        let off = dense_offset(n, &out_idx);
        let term = a.entry(&idx) * b.entry(&b_idx);
        let slot = &mut out.data_mut()[off];
        *slot = slot.clone() + term;
    }
    Ok(out)
}

/// `A : B` for symmetric `A`, where the choice of slots does not matter.
pub fn contract_symmetric<S: Scalar>(
    a: &SymmetricHypermatrix<S>,
    b: &impl HypermatrixView<S>,
) -> Result<GeneralHypermatrix<S>> {
    let k = a.order();
    let s = b.order();
    if s > k {
        return Err(Error::param(format!("cannot contract order {s} into order {k}")));
    }
    let slots: Vec<usize> = (k - s..k).collect();
    contract(a, &slots, b)
}

/// Frobenius product `Σ_i A_i B_i` over all `n^k` multiindices.
pub fn frobenius<S: Scalar>(a: &impl HypermatrixView<S>, b: &impl HypermatrixView<S>) -> Result<S> {
    check_same_shape(a, b)?;
    let k = a.order();
    let full: Vec<usize> = (0..k).collect();
    let scalar = contract(a, &full, b)?;
    Ok(scalar.get(&[]))
}

/// Splits a sorted multiindex into its runs `(value, multiplicity)`.
fn runs(sorted: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::with_capacity(sorted.len());
    for &i in sorted {
        match out.last_mut() {
            Some((v, m)) if *v == i => *m += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// Visits every sub-multiset `head` of size `head_len` of the multiset given by
/// `runs`, passing the head (sorted) and the leftover multiplicities.
fn for_each_split(runs: &[(usize, usize)], head_len: usize, f: &mut impl FnMut(&[usize], &[(usize, usize)])) {
    fn rec(
        runs: &[(usize, usize)],
        pos: usize,
        remaining: usize,
        head: &mut Vec<usize>,
        tail: &mut Vec<(usize, usize)>,
        f: &mut impl FnMut(&[usize], &[(usize, usize)]),
    ) {
        if pos == runs.len() {
            if remaining == 0 {
                f(head, tail);
            }
            return;
        }
        let (value, mult) = runs[pos];
        let capacity_after: usize = runs[pos + 1..].iter().map(|r| r.1).sum();
        let lo = remaining.saturating_sub(capacity_after);
        for take in lo..=mult.min(remaining) {
            head.extend(std::iter::repeat(value).take(take));
            if mult - take > 0 {
                tail.push((value, mult - take));
            }
            rec(runs, pos + 1, remaining - take, head, tail, f);
            if mult - take > 0 {
                tail.pop();
            }
            head.truncate(head.len() - take);
        }
    }
    rec(runs, 0, head_len, &mut Vec::new(), &mut Vec::new(), f);
}

fn orderings_of_runs(runs: &[(usize, usize)]) -> u64 {
    let expanded: Vec<usize> = runs.iter().flat_map(|&(v, m)| std::iter::repeat(v).take(m)).collect();
    orderings(&expanded)
}

/// `A : v^{⊗m}` contracted into the last `m` slots of symmetric `A`.
///
/// The result is symmetric of order `k - m` (order 0 holds the scalar
/// `A : v^{⊗k}`). Evaluated on the compact storage: each stored entry is
/// split into an output head and a contracted tail, weighted by the number
/// of orderings of the tail.
pub fn apply_vector_power<S: Scalar>(
    a: &SymmetricHypermatrix<S>,
    v: &[S],
    m: usize,
) -> Result<SymmetricHypermatrix<S>> {
    let k = a.order();
    let n = a.dim();
    if v.len() != n {
        return Err(Error::shape(format!("vector of length {} for dimension {n}", v.len())));
    }
    if m == 0 || m > k {
        return Err(Error::param(format!("vector power m={m} must lie in 1..={k}")));
    }
    let mut out = SymmetricHypermatrix::<S>::zeros(n, k - m)?;
    for (idx, value) in a.iter() {
        if *value == S::zero() {
            continue;
        }
        let r = runs(&idx);
        for_each_split(&r, k - m, &mut |head, tail| {
            let weight: S = from_count(orderings_of_runs(tail));
            let prod = tail
                .iter()
                .fold(S::one(), |acc, &(i, mult)| acc * pow(v[i].clone(), mult));
            let rank = out.rank(head);
            let slot = out.value_mut(rank);
            *slot = slot.clone() + value.clone() * weight * prod;
        });
    }
    Ok(out)
}

/// `A : v^{⊗(k-1)}` as a plain vector; the hot path of the eigen solvers.
pub(crate) fn apply_k_minus_1<S: Scalar>(a: &SymmetricHypermatrix<S>, v: &[S]) -> Vec<S> {
    let k = a.order();
    let mut out = vec![S::zero(); a.dim()];
    for (idx, value) in a.iter() {
        if *value == S::zero() {
            continue;
        }
        let total = orderings(&idx);
        let r = runs(&idx);
        for &(j, mult_j) in &r {
            // orderings(idx \ {j}) = orderings(idx) * mult_j / k
            let weight = total * mult_j as u64 / k as u64;
            let mut prod = S::one();
            for &(i, mult) in &r {
                let e = if i == j { mult - 1 } else { mult };
                prod = prod * pow(v[i].clone(), e);
            }
            out[j] = out[j].clone() + value.clone() * from_count::<S>(weight) * prod;
        }
    }
    out
}

/// `A : v^{⊗(k-2)}` as a dense `n × n` row-major matrix (order-2 case: `A` itself).
pub(crate) fn apply_k_minus_2<S: Scalar>(a: &SymmetricHypermatrix<S>, v: &[S]) -> Vec<S> {
    let n = a.dim();
    let k = a.order();
    let mut out = vec![S::zero(); n * n];
    if k == 2 {
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = a.get_sorted(&[i.min(j), i.max(j)]);
            }
        }
        return out;
    }
    let m = apply_vector_power(a, v, k - 2).expect("shape checked by caller");
    for i in 0..n {
        for j in i..n {
            let x = m.get_sorted(&[i, j]);
            out[i * n + j] = x.clone();
            out[j * n + i] = x;
        }
    }
    out
}

/// `A^{:t} = J : A^{∘t}`, the sum of `t`-th powers of all `n^k` entries.
pub fn entry_power_sum<S: Scalar>(a: &SymmetricHypermatrix<S>, t: u32) -> Result<S> {
    if t == 0 {
        return Err(Error::param("power t must be >= 1"));
    }
    Ok(SortedMultiindices::new(a.dim(), a.order())
        .zip(a.values())
        .fold(S::zero(), |acc, (idx, x)| {
            acc + from_count::<S>(orderings(&idx)) * pow(x.clone(), t as usize)
        }))
}

impl<S: Scalar> GeneralHypermatrix<S> {
    /// Sum of `t`-th powers of all entries.
    pub fn entry_power_sum(&self, t: u32) -> Result<S> {
        if t == 0 {
            return Err(Error::param("power t must be >= 1"));
        }
        Ok(self
            .data()
            .iter()
            .fold(S::zero(), |acc, x| acc + pow(x.clone(), t as usize)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use num_rational::Rational64;

    fn ones(n: usize) -> Vec<f64> {
        vec![1.0; n]
    }

    #[test]
    fn tensor_product_examples() {
        let one = GeneralHypermatrix::vector(&ones(2)).unwrap();
        let jj = tensor_product(&one, &one).unwrap();
        let j = SymmetricHypermatrix::<f64>::all_ones(2, 2).unwrap();
        assert_eq!(jj, j.to_general().unwrap());

        let v = GeneralHypermatrix::vector(&[1.0, 2.0]).unwrap();
        assert_eq!(tensor_power(&v, 2).unwrap().data(), &[1.0, 2.0, 2.0, 4.0]);

        let j3 = SymmetricHypermatrix::<f64>::all_ones(2, 3).unwrap();
        assert_eq!(tensor_power(&one, 3).unwrap(), j3.to_general().unwrap());
        assert_eq!(tensor_power_vector(&ones(2), 3).unwrap(), j3);
    }

    #[test]
    fn all_ones_is_tensor_power_of_ones() {
        let j = SymmetricHypermatrix::<f64>::all_ones(3, 3).unwrap();
        let one = GeneralHypermatrix::vector(&ones(3)).unwrap();
        assert_eq!(tensor_power(&one, 3).unwrap(), j.to_general().unwrap());
    }

    #[test]
    fn contraction_examples() {
        let j = SymmetricHypermatrix::<f64>::all_ones(2, 3).unwrap();
        let oo = tensor_power_vector(&ones(2), 2).unwrap();
        let out = contract_symmetric(&j, &oo).unwrap();
        assert_eq!(out.data(), &[4.0, 4.0]);

        let i = SymmetricHypermatrix::<f64>::identity(3, 3).unwrap();
        let vv = tensor_power_vector(&[1.0, 2.0, 3.0], 2).unwrap();
        assert_eq!(contract_symmetric(&i, &vv).unwrap().data(), &[1.0, 4.0, 9.0]);

        assert_eq!(frobenius(&j, &j).unwrap(), 8.0);
    }

    #[test]
    fn contraction_errors() {
        let j = SymmetricHypermatrix::<f64>::all_ones(2, 3).unwrap();
        let vv = tensor_power_vector(&ones(2), 2).unwrap();
        assert!(matches!(contract(&j, &[0], &vv), Err(Error::Parameter(_))));
        assert!(matches!(contract(&j, &[0, 0], &vv), Err(Error::Parameter(_))));
        let wrong = tensor_power_vector(&ones(3), 2).unwrap();
        assert!(matches!(contract(&j, &[0, 1], &wrong), Err(Error::Shape(_))));
    }

    #[test]
    fn apply_vector_power_examples() {
        let j = SymmetricHypermatrix::<f64>::all_ones(2, 3).unwrap();
        let out = apply_vector_power(&j, &ones(2), 2).unwrap();
        assert_eq!(out.values(), &[4.0, 4.0]);
        let j33 = SymmetricHypermatrix::<f64>::all_ones(3, 3).unwrap();
        let s = apply_vector_power(&j33, &ones(3), 3).unwrap();
        assert_eq!(s.get(&[]), 27.0);
        assert!(apply_vector_power(&j, &ones(3), 2).is_err());
        assert!(apply_vector_power(&j, &ones(2), 0).is_err());
        assert!(apply_vector_power(&j, &ones(2), 4).is_err());
    }

    #[test]
    fn fast_paths_agree_with_general_path() {
        let a = SymmetricHypermatrix::<Complex64>::from_fn(3, 4, |idx| {
            Complex64::new(
                idx.iter().map(|&i| i as f64 + 0.5).product::<f64>(),
                idx[0] as f64 - idx[3] as f64,
            )
        })
        .unwrap();
        let v = [
            Complex64::new(0.3, -0.2),
            Complex64::new(-1.1, 0.7),
            Complex64::new(0.4, 0.9),
        ];
        let slow = apply_vector_power(&a, &v, 3).unwrap();
        let fast = apply_k_minus_1(&a, &v);
        for (j, f) in fast.iter().enumerate() {
            assert!((slow.get(&[j]) - f).norm() < 1e-12);
        }
        let slow2 = apply_vector_power(&a, &v, 2).unwrap();
        let fast2 = apply_k_minus_2(&a, &v);
        for i in 0..3 {
            for j in 0..3 {
                assert!((slow2.get(&[i, j]) - fast2[i * 3 + j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn entry_power_sum_examples() {
        let j = SymmetricHypermatrix::<Rational64>::all_ones(2, 3).unwrap();
        assert_eq!(entry_power_sum(&j, 2).unwrap(), Rational64::from_integer(8));
        assert!(entry_power_sum(&j, 0).is_err());
        let g = j.to_general().unwrap();
        assert_eq!(g.entry_power_sum(3).unwrap(), Rational64::from_integer(8));
    }
}
