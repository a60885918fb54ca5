//! Damped Newton correction for the eigenpair system
//!
//! ```text
//! (A : v^{⊗(k-1)})_j - λ v_j^{k-1} = 0,   j = 1..n
//! c · v - 1 = 0
//! ```
//!
//! in the unknowns `(v, λ)`, where `c` is a fixed random affine chart that
//! removes the projective scaling freedom of `v`.

use num_complex::Complex;

use crate::hypermatrix::SymmetricHypermatrix;
use crate::hypermatrix::{apply_k_minus_1, apply_k_minus_2};
use crate::linalg::{solve, solve_damped};
use crate::scalar::{dot, norm2, norm2_sqr, Real};

const POLISH_STEPS: usize = 40;

#[derive(Debug, Clone)]
pub(crate) struct NewtonOutcome<T> {
    pub v: Vec<Complex<T>>,
    pub lambda: Complex<T>,
    /// Eigen residual of the unit-normalized vector.
    pub residual: T,
}

pub(crate) struct EigenSystem<'a, T> {
    a: &'a SymmetricHypermatrix<Complex<T>>,
    chart: Vec<Complex<T>>,
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<'a, T: Real> EigenSystem<'a, T> {
    pub fn new(a: &'a SymmetricHypermatrix<Complex<T>>, chart: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(chart.len(), a.dim());
        Self { a, chart }
    }

    /// Rescales `v` onto the chart `c · v = 1` when possible.
    pub fn to_chart(&self, v: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        let s = dot(&self.chart, v);
        if s.norm() < T::lit(1e-14) * norm2(v) {
            return None;
        }
        Some(v.iter().map(|z| z / s).collect())
    }

    fn residual_vector(&self, v: &[Complex<T>], lambda: Complex<T>) -> Vec<Complex<T>> {
        let k = self.a.order() as u32;
        let y = apply_k_minus_1(self.a, v);
        let mut f: Vec<Complex<T>> = y.iter().zip(v).map(|(yj, vj)| yj - lambda * vj.powu(k - 1)).collect();
        f.push(dot(&self.chart, v) - Complex::new(T::one(), T::zero()));
        f
    }

    /// Eigen residual `‖A:v^{k-1} - λ v^{∘(k-1)}‖₂` after scaling `v` to unit norm.
    pub fn normalized_residual(&self, f: &[Complex<T>], v: &[Complex<T>]) -> T {
        let n = v.len();
        let scale = norm2(v).powi(self.a.order() as i32 - 1);
        norm2(&f[..n]) / scale
    }

    fn jacobian(&self, v: &[Complex<T>], lambda: Complex<T>) -> Vec<Complex<T>> {
        let n = v.len();
        let k = self.a.order();
        let km1 = T::lit((k - 1) as f64);
        let m = apply_k_minus_2(self.a, v);
        let cols = n + 1;
        let mut j = vec![zero(); cols * cols];
        for r in 0..n {
            for c in 0..n {
                j[r * cols + c] = m[r * n + c] * km1;
            }
            let diag = if k >= 2 { v[r].powu(k as u32 - 2) } else { zero() };
            j[r * cols + r] = j[r * cols + r] - lambda * diag * km1;
            j[r * cols + n] = -v[r].powu(k as u32 - 1);
        }
        for c in 0..n {
            j[n * cols + c] = self.chart[c];
        }
        j
    }

    /// Least-squares eigenvalue estimate for a fixed vector.
    pub fn lambda_guess(&self, v: &[Complex<T>]) -> Complex<T> {
        let k = self.a.order() as u32;
        let y = apply_k_minus_1(self.a, v);
        let w: Vec<Complex<T>> = v.iter().map(|z| z.powu(k - 1)).collect();
        let ww = norm2_sqr(&w);
        if ww == T::zero() {
            return zero();
        }
        w.iter().zip(&y).fold(zero(), |acc, (wi, yi)| acc + wi.conj() * yi) / ww
    }

    /// Damped Newton from `(v0, λ0)`; `v0` should lie on the chart.
    ///
    /// Converges when the unit-normalized eigen residual drops below `tol`.
    /// A rank-deficient Jacobian (eigenvector continua, branch points) falls
    /// back to a Levenberg–Marquardt step.
    pub fn correct(
        &self,
        v0: &[Complex<T>],
        lambda0: Complex<T>,
        max_iters: usize,
        tol: T,
    ) -> Option<NewtonOutcome<T>> {
        let n = v0.len();
        let mut v = v0.to_vec();
        let mut lambda = lambda0;
        let mut f = self.residual_vector(&v, lambda);
        let mut merit = norm2(&f);
        for iter in 0..=max_iters {
            let res = self.normalized_residual(&f, &v);
            if !res.is_finite() {
                return None;
            }
            if res < tol {
                let (v, lambda, residual) = if iter == 0 {
                    (v, lambda, res)
                } else {
                    self.polish(v, lambda, f, res)
                };
                return Some(NewtonOutcome { v, lambda, residual });
            }
            if iter == max_iters {
                break;
            }
            let step = self.step(&v, lambda, &f)?;
            let mut alpha = T::one();
            let mut accepted = false;
            for _ in 0..30 {
                let trial_v: Vec<Complex<T>> = v.iter().zip(&step).map(|(x, d)| x + d * alpha).collect();
                let trial_l = lambda + step[n] * alpha;
                let trial_f = self.residual_vector(&trial_v, trial_l);
                let trial_merit = norm2(&trial_f);
                if trial_merit.is_finite() && trial_merit < merit * (T::one() - T::lit(1e-4) * alpha) {
                    v = trial_v;
                    lambda = trial_l;
                    f = trial_f;
                    merit = trial_merit;
                    accepted = true;
                    break;
                }
                alpha = alpha * T::lit(0.5);
            }
            if !accepted {
                return None;
            }
        }
        None
    }

    /// Extra Newton steps kept while each one shrinks the residual by at least 10%.
    ///
    /// At a simple root this stops after a step or two at rounding level; at a
    /// multiple root the damped fallback keeps creeping towards the root.
    fn polish(
        &self,
        mut v: Vec<Complex<T>>,
        mut lambda: Complex<T>,
        mut f: Vec<Complex<T>>,
        mut res: T,
    ) -> (Vec<Complex<T>>, Complex<T>, T) {
        let n = v.len();
        for _ in 0..POLISH_STEPS {
            let Some(step) = self.step(&v, lambda, &f) else {
                break;
            };
            let trial_v: Vec<Complex<T>> = v.iter().zip(&step).map(|(x, d)| x + d).collect();
            let trial_l = lambda + step[n];
            let trial_f = self.residual_vector(&trial_v, trial_l);
            let trial_res = self.normalized_residual(&trial_f, &trial_v);
            if !(trial_res < res * T::lit(0.9)) {
                break;
            }
            v = trial_v;
            lambda = trial_l;
            f = trial_f;
            res = trial_res;
        }
        (v, lambda, res)
    }

    /// Tangent `(v', λ')` of the solution curve when `A` moves in direction `B`,
    /// given `dfdt = B : v^{⊗(k-1)}`.
    pub fn tangent(&self, v: &[Complex<T>], lambda: Complex<T>, dfdt: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        let mut rhs: Vec<Complex<T>> = dfdt.iter().map(|z| -z).collect();
        rhs.push(zero());
        self.solve_jacobian(v, lambda, &rhs)
    }

    /// Newton direction, or a Levenberg–Marquardt direction when the Jacobian is singular.
    fn step(&self, v: &[Complex<T>], lambda: Complex<T>, f: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        let rhs: Vec<Complex<T>> = f.iter().map(|z| -z).collect();
        self.solve_jacobian(v, lambda, &rhs)
    }

    fn solve_jacobian(&self, v: &[Complex<T>], lambda: Complex<T>, rhs: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
        let n = v.len();
        let jac = self.jacobian(v, lambda);
        solve(&jac, rhs, T::lit(1e-13)).or_else(|| {
            let scale = jac.iter().map(|z| z.norm_sqr()).sum::<T>().max(T::one());
            solve_damped(&jac, n + 1, n + 1, rhs, scale * T::lit(1e-12))
        })
    }
}
