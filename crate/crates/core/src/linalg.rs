//! Small dense complex linear algebra for Newton corrections.

use num_complex::Complex;

use crate::scalar::Real;

/// Solves the square system `a x = b` (row-major `a`) by Gaussian elimination
/// with partial pivoting. Returns `None` when a pivot falls below
/// `rel_pivot_tol` times the largest entry magnitude.
pub fn solve<T: Real>(a: &[Complex<T>], b: &[Complex<T>], rel_pivot_tol: T) -> Option<Vec<Complex<T>>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    let mut m = a.to_vec();
    let mut x = b.to_vec();
    let scale = m.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if scale == T::zero() || !scale.is_finite() {
        return None;
    }
    let floor = scale * rel_pivot_tol;
    for col in 0..n {
        let (piv, piv_abs) = (col..n)
            .map(|r| (r, m[r * n + col].norm()))
            .fold((col, T::lit(-1.0)), |best, cur| if cur.1 > best.1 { cur } else { best });
        if piv_abs <= floor {
            return None;
        }
        if piv != col {
            for c in 0..n {
                m.swap(piv * n + c, col * n + c);
            }
            x.swap(piv, col);
        }
        let d = m[col * n + col];
        for r in col + 1..n {
            let f = m[r * n + col] / d;
            if f == Complex::new(T::zero(), T::zero()) {
                continue;
            }
            for c in col..n {
                let sub = f * m[col * n + c];
                m[r * n + c] = m[r * n + c] - sub;
            }
            x[r] = x[r] - f * x[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = x[col];
        for c in col + 1..n {
            acc = acc - m[col * n + c] * x[c];
        }
        x[col] = acc / m[col * n + col];
    }
    if x.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Some(x)
    } else {
        None
    }
}

/// Regularized least squares `(JᴴJ + μI) x = Jᴴ b` for a `rows × cols` matrix.
pub fn solve_damped<T: Real>(
    j: &[Complex<T>],
    rows: usize,
    cols: usize,
    b: &[Complex<T>],
    mu: T,
) -> Option<Vec<Complex<T>>> {
    let mut normal = vec![Complex::new(T::zero(), T::zero()); cols * cols];
    let mut rhs = vec![Complex::new(T::zero(), T::zero()); cols];
    for r in 0..rows {
        for c1 in 0..cols {
            let a = j[r * cols + c1].conj();
            rhs[c1] = rhs[c1] + a * b[r];
            for c2 in 0..cols {
                normal[c1 * cols + c2] = normal[c1 * cols + c2] + a * j[r * cols + c2];
            }
        }
    }
    for c in 0..cols {
        normal[c * cols + c] = normal[c * cols + c] + Complex::new(mu, T::zero());
    }
    solve(&normal, &rhs, T::epsilon())
}
