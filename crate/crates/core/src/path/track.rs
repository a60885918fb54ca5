use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use super::discriminant::merge_roots;
use super::LinePath;
use crate::eigen::newton::EigenSystem;
use crate::eigen::{enumerate_eigenpairs, SolverParams};
use crate::error::{Error, Result};
use crate::hypermatrix::{apply_k_minus_1, normalize_unit};
use crate::scalar::{norm2, Real};

/// Continuation settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrackParams<T> {
    /// Number of equispaced grid points on `[0, 1]`, endpoints included.
    pub grid_points: usize,
    /// Maximum number of bisections of a grid interval.
    pub refine_depth: usize,
    /// Newton steps allowed per corrector call.
    pub max_corrector_steps: usize,
    /// Relative tolerance for counting distinct eigenvalues across curves.
    pub merge_tol: T,
    pub solver: SolverParams<T>,
}

impl<T: Real> Default for TrackParams<T> {
    fn default() -> Self {
        Self {
            grid_points: 21,
            refine_depth: 20,
            max_corrector_steps: 10,
            merge_tol: T::lit(1e-6),
            solver: SolverParams::default(),
        }
    }
}

/// One accepted point of a tracked curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSample<T> {
    pub t: T,
    pub lambda: Complex<T>,
    /// Unit 2-norm eigenvector at `t`.
    pub v: Vec<Complex<T>>,
    pub residual: T,
    /// Bisection depth of the step that reached this sample; 0 for a full grid step.
    pub depth: usize,
}

/// A continued eigenvalue trajectory `t ↦ λ(t)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenCurve<T> {
    pub id: usize,
    /// Samples in increasing `t`, including bisection points.
    pub samples: Vec<CurveSample<T>>,
    /// The curve was continued over all of `[0, 1]`.
    pub matched: bool,
    /// Grid points where the distinct count dropped or tracking failed.
    pub singular_points: Vec<T>,
    /// Where continuation gave up, if it did.
    pub broken_at: Option<T>,
}

impl<T: Real> EigenCurve<T> {
    pub fn start(&self) -> &CurveSample<T> {
        &self.samples[0]
    }

    pub fn end(&self) -> &CurveSample<T> {
        self.samples.last().expect("curves have a start sample")
    }

    /// `Σ |λ(t_{i+1}) - λ(t_i)|` over consecutive samples.
    pub fn variation(&self) -> T {
        self.samples
            .windows(2)
            .map(|w| (w[1].lambda - w[0].lambda).norm())
            .sum()
    }

    pub fn lambda_at(&self, t: T) -> Option<Complex<T>> {
        self.samples.iter().find(|s| s.t == t).map(|s| s.lambda)
    }

    /// Interior grid samples whose two neighbouring grid intervals were each
    /// crossed in one predictor–corrector step, away from singular points.
    pub fn regular_samples(&self) -> impl Iterator<Item = &CurveSample<T>> {
        self.samples.windows(3).filter_map(|w| {
            let ok = w[1].depth == 0 && w[2].depth == 0 && !self.singular_points.contains(&w[1].t);
            ok.then_some(&w[1])
        })
    }
}

pub(crate) struct Tracker<'p, T> {
    path: &'p LinePath<T>,
    newton_tol: T,
    max_steps: usize,
    refine_depth: usize,
}

impl<'p, T: Real> Tracker<'p, T> {
    pub fn new(path: &'p LinePath<T>, newton_tol: T, max_steps: usize, refine_depth: usize) -> Self {
        Self {
            path,
            newton_tol,
            max_steps,
            refine_depth,
        }
    }

    /// Predictor–corrector step from `from` to `t1`; `None` when the corrector
    /// fails or lands too far from the prediction.
    fn step(&self, from: &CurveSample<T>, t1: T, depth: usize) -> Option<CurveSample<T>> {
        let a0 = self.path.at(from.t);
        let chart: Vec<Complex<T>> = from.v.iter().map(|z| z.conj()).collect();
        let here = EigenSystem::new(&a0, chart.clone());
        let dt = t1 - from.t;
        let dfdt = apply_k_minus_1(self.path.direction(), &from.v);
        let (v_pred, l_pred) = match here.tangent(&from.v, from.lambda, &dfdt) {
            Some(d) => {
                let n = from.v.len();
                let v: Vec<Complex<T>> = from.v.iter().zip(&d).map(|(x, dx)| x + dx * dt).collect();
                (v, from.lambda + d[n] * dt)
            }
            None => (from.v.clone(), from.lambda),
        };
        let a1 = self.path.at(t1);
        let there = EigenSystem::new(&a1, chart);
        let v_pred = there.to_chart(&v_pred)?;
        let out = there.correct(&v_pred, l_pred, self.max_steps, self.newton_tol)?;
        let jump_v = norm2(&out.v.iter().zip(&v_pred).map(|(a, b)| a - b).collect::<Vec<_>>());
        let jump_l = (out.lambda - l_pred).norm();
        if jump_v > T::lit(0.1) || jump_l > T::lit(0.1) * T::one().max(l_pred.norm()) {
            return None;
        }
        let v = normalize_unit(&out.v).ok()?;
        Some(CurveSample {
            t: t1,
            lambda: out.lambda,
            v,
            residual: out.residual,
            depth,
        })
    }

    /// Continues from `from` to `t1`, bisecting on failure. On success the
    /// accepted samples (ending at `t1`) are appended to `out`; on failure the
    /// `t` where continuation stalled is returned.
    pub fn advance(
        &self,
        from: &CurveSample<T>,
        t1: T,
        depth: usize,
        out: &mut Vec<CurveSample<T>>,
    ) -> std::result::Result<CurveSample<T>, T> {
        if let Some(p) = self.step(from, t1, depth) {
            out.push(p.clone());
            return Ok(p);
        }
        if depth >= self.refine_depth {
            return Err(from.t);
        }
        let mid = (from.t + t1) / T::lit(2.0);
        let m = self.advance(from, mid, depth + 1, out)?;
        self.advance(&m, t1, depth + 1, out)
    }
}

pub(crate) fn grid<T: Real>(points: usize) -> Vec<T> {
    let last = T::lit((points - 1) as f64);
    (0..points)
        .map(|i| {
            if i + 1 == points {
                T::one()
            } else {
                T::lit(i as f64) / last
            }
        })
        .collect()
}

fn track_one<T: Real>(tracker: &Tracker<'_, T>, id: usize, start: CurveSample<T>, ts: &[T]) -> EigenCurve<T> {
    let mut samples = vec![start];
    let mut broken_at = None;
    for &t1 in &ts[1..] {
        let from = samples.last().expect("nonempty").clone();
        if let Err(t) = tracker.advance(&from, t1, 0, &mut samples) {
            broken_at = Some(t);
            break;
        }
    }
    EigenCurve {
        id,
        samples,
        matched: broken_at.is_none(),
        singular_points: broken_at.into_iter().collect(),
        broken_at,
    }
}

/// Enumerates the eigenpairs of `A(0)` and continues each one across `[0, 1]`.
///
/// Curves are ordered by their starting eigenvalue. After tracking, grid
/// points where the number of distinct eigenvalues across curves falls
/// below that of a neighbouring grid point are recorded as singular points
/// of the curves that coincide there.
pub fn track_curves<T: Real>(path: &LinePath<T>, params: &TrackParams<T>) -> Result<Vec<EigenCurve<T>>> {
    if params.grid_points < 2 {
        return Err(Error::param("grid needs at least two points"));
    }
    let report = enumerate_eigenpairs(&path.at(T::zero()), &params.solver)?;
    let ts = grid::<T>(params.grid_points);
    let tracker = Tracker::new(
        path,
        params.solver.newton_tol,
        params.max_corrector_steps,
        params.refine_depth,
    );
    let mut curves: Vec<EigenCurve<T>> = report
        .pairs
        .par_iter()
        .enumerate()
        .map(|(id, pair)| {
            let start = CurveSample {
                t: T::zero(),
                lambda: pair.lambda,
                v: pair.v.clone(),
                residual: pair.residual,
                depth: 0,
            };
            track_one(&tracker, id, start, &ts)
        })
        .collect();
    mark_coincidences(&mut curves, &ts, params.merge_tol);
    Ok(curves)
}

fn mark_coincidences<T: Real>(curves: &mut [EigenCurve<T>], ts: &[T], merge_tol: T) {
    let counts: Vec<usize> = ts
        .iter()
        .map(|&t| {
            let values: Vec<Complex<T>> = curves.iter().filter_map(|c| c.lambda_at(t)).collect();
            merge_roots(&values, merge_tol).len()
        })
        .collect();
    for (i, &t) in ts.iter().enumerate() {
        let prev = if i > 0 { counts[i - 1] } else { 0 };
        let next = counts.get(i + 1).copied().unwrap_or(0);
        if counts[i] >= prev.max(next) {
            continue;
        }
        let values: Vec<Option<Complex<T>>> = curves.iter().map(|c| c.lambda_at(t)).collect();
        for (a, la) in values.iter().enumerate() {
            let Some(la) = la else { continue };
            let collides = values.iter().enumerate().any(|(b, lb)| {
                b != a && lb.is_some_and(|lb| (*la - lb).norm() <= merge_tol * T::one().max(la.norm()).max(lb.norm()))
            });
            if collides && !curves[a].singular_points.contains(&t) {
                curves[a].singular_points.push(t);
            }
        }
    }
    for c in curves.iter_mut() {
        c.singular_points
            .sort_by(|x, y| x.partial_cmp(y).expect("grid values are finite"));
    }
}
