use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypermatrix::{apply_k_minus_1, SymmetricHypermatrix};
use crate::scalar::Real;

/// Outcome of the nonnegative power method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerIteration<T> {
    /// Midpoint of the final bracket.
    pub rho: T,
    pub lower: T,
    pub upper: T,
    pub iterations: usize,
    pub converged: bool,
    /// Final positive iterate, unit 2-norm.
    pub vector: Vec<T>,
    /// `(lower, upper)` ratio bracket at every iteration.
    pub brackets: Vec<(T, T)>,
}

/// Power iteration `v ← (A : v^{⊗(k-1)})^{∘1/(k-1)}` from the uniform positive vector.
///
/// Each step brackets `ρ(A)` between the smallest and largest componentwise
/// ratio `(A : v^{⊗(k-1)})_j / v_j^{k-1}`; the iteration stops once the
/// bracket is narrower than `tol`.
pub fn power_iteration_nonneg<T: Real>(
    a: &SymmetricHypermatrix<Complex<T>>,
    tol: T,
    max_iters: usize,
) -> Result<PowerIteration<T>> {
    if a.order() < 2 {
        return Err(Error::param(format!("order {} must be >= 2", a.order())));
    }
    let real = match a.real_part() {
        Some(r) if a.is_nonnegative() => r,
        _ => {
            return Err(Error::Precondition(
                "power iteration needs an entrywise nonnegative real hypermatrix".into(),
            ))
        }
    };
    let n = a.dim();
    let km1 = a.order() as i32 - 1;
    let inv = T::one() / T::lit(km1 as f64);
    let mut v = vec![T::one() / T::lit(n as f64).sqrt(); n];
    let mut brackets = Vec::new();
    let mut last = (T::zero(), T::infinity());
    for it in 1..=max_iters.max(1) {
        let y = apply_k_minus_1(&real, &v);
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for (yj, vj) in y.iter().zip(&v) {
            let r = *yj / vj.powi(km1);
            lo = lo.min(r);
            hi = hi.max(r);
        }
        if !(lo.is_finite() && hi.is_finite()) {
            break;
        }
        brackets.push((lo, hi));
        last = (lo, hi);
        if hi - lo < tol {
            return Ok(PowerIteration {
                rho: (lo + hi) / T::lit(2.0),
                lower: lo,
                upper: hi,
                iterations: it,
                converged: true,
                vector: v,
                brackets,
            });
        }
        let next: Vec<T> = y.iter().map(|yj| yj.powf(inv)).collect();
        let norm = next.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if norm == T::zero() || next.iter().any(|x| *x == T::zero()) {
            // reducible support: ratios are no longer defined on every coordinate
            break;
        }
        v = next.into_iter().map(|x| x / norm).collect();
    }
    Ok(PowerIteration {
        rho: (last.0 + last.1) / T::lit(2.0),
        lower: last.0,
        upper: last.1,
        iterations: brackets.len(),
        converged: false,
        vector: v,
        brackets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::row_sums;
    use crate::ensembles::{adjacency_hypermatrix, complete_gap};
    use crate::hypergraph::Hypergraph;

    #[test]
    fn all_ones_converges_immediately() {
        let j = SymmetricHypermatrix::<Complex<f64>>::all_ones(3, 3).unwrap();
        let p = power_iteration_nonneg(&j, 1e-10, 100).unwrap();
        assert!(p.converged && p.iterations <= 5);
        assert!((p.rho - 9.0).abs() < 1e-10);
    }

    #[test]
    fn complete_adjacency_and_gap() {
        let a = adjacency_hypermatrix::<Complex<f64>>(&Hypergraph::complete(5, 3).unwrap()).unwrap();
        let p = power_iteration_nonneg(&a, 1e-10, 100).unwrap();
        assert!((p.rho - 6.0).abs() < 1e-8);

        let b = complete_gap::<Complex<f64>>(5, 3).unwrap();
        let p = power_iteration_nonneg(&b, 1e-10, 100).unwrap();
        let r = row_sums(&b);
        assert!(p.rho >= r.min - 1e-12 && p.rho <= r.max + 1e-12);
        assert!((p.rho - 6.5).abs() < 1e-10);
    }

    #[test]
    fn brackets_stay_inside_row_sums() {
        let h = Hypergraph::random(6, 3, 0.6, 11).unwrap();
        let mut a = adjacency_hypermatrix::<Complex<f64>>(&h).unwrap();
        for i in 0..6 {
            a.set(&[i, i, i], Complex::new(0.25 * i as f64 + 0.1, 0.0)).unwrap();
        }
        let r = row_sums(&a);
        let p = power_iteration_nonneg(&a, 1e-12, 500).unwrap();
        for (lo, hi) in &p.brackets {
            assert!(*lo >= r.min - 1e-10 && *hi <= r.max + 1e-10);
        }
        assert!(p.converged);
    }

    #[test]
    fn rejects_negative_entries() {
        let mut a = SymmetricHypermatrix::<Complex<f64>>::all_ones(2, 3).unwrap();
        a.set(&[0, 0, 1], Complex::new(-1.0, 0.0)).unwrap();
        assert!(matches!(
            power_iteration_nonneg(&a, 1e-8, 10),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reports_non_convergence() {
        let a = SymmetricHypermatrix::<Complex<f64>>::identity(3, 3).unwrap();
        let mut b = a.clone();
        b.set(&[0, 0, 0], Complex::new(2.0, 0.0)).unwrap();
        let p = power_iteration_nonneg(&b, 1e-14, 3).unwrap();
        assert!(!p.converged);
        assert_eq!(p.iterations, 3);
    }
}
