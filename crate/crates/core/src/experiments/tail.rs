use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{checked_factorial, ColexSubsets};
use crate::error::{Error, Result};
use crate::hypergraph::edge_draws;
use crate::rng::derive_seed;
use crate::scalar::{norm2, Real};

/// Which ensemble a tail study samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailKind {
    /// `U(n,k,p)`, contracted over its last `k - 1` slots.
    Upper,
    /// `D(n,k,p)`.
    Gap,
}

/// Threshold grid of a tail study.
#[derive(Debug, Clone, PartialEq)]
pub enum Thresholds<T> {
    Explicit(Vec<T>),
    /// `count` points from 0 to the largest sampled value, equispaced in `t²`.
    Auto(usize),
}

/// Survival below this many observations per trial is left out of the fit.
pub const DEFAULT_FIT_FLOOR_COUNT: f64 = 10.0;

/// Empirical survival of `‖X : v^{⊗(k-1)}‖₂` with a fit `S(t) ≈ C e^{-c t²}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TailEstimate<T> {
    pub kind: TailKind,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub trials: usize,
    pub seed: u64,
    pub thresholds: Vec<T>,
    pub survival: Vec<T>,
    /// Sorted sample values.
    pub samples: Vec<T>,
    pub fit_c: T,
    #[serde(rename = "fit_C")]
    pub fit_big_c: T,
    /// OLS slope of `ln S` on `t²`, i.e. `-fit_c`.
    pub slope: T,
    pub r_squared: T,
    /// Thresholds used by the fit.
    pub fit_points: usize,
    /// Smallest survival value admitted to the fit.
    pub fit_floor: T,
}

impl<T: Real> TailEstimate<T> {
    /// Refits over thresholds whose survival is at least `floor`.
    pub fn refit(&self, floor: T) -> Result<Self> {
        let mut out = self.clone();
        let fit = fit_sub_gaussian(&self.thresholds, &self.survival, floor)?;
        out.apply(fit, floor);
        Ok(out)
    }

    fn apply(&mut self, fit: Fit<T>, floor: T) {
        self.slope = fit.slope;
        self.fit_c = -fit.slope;
        self.fit_big_c = fit.intercept.exp();
        self.r_squared = fit.r_squared;
        self.fit_points = fit.points;
        self.fit_floor = floor;
    }

    pub fn is_monotone(&self) -> bool {
        self.survival.windows(2).all(|w| w[1] <= w[0])
    }
}

struct Fit<T> {
    slope: T,
    intercept: T,
    r_squared: T,
    points: usize,
}

/// Least squares of `ln S` against `t²` over points with `S >= floor > 0`.
fn fit_sub_gaussian<T: Real>(thresholds: &[T], survival: &[T], floor: T) -> Result<Fit<T>> {
    let pts: Vec<(T, T)> = thresholds
        .iter()
        .zip(survival)
        .filter(|(_, &s)| s >= floor && s > T::zero())
        .map(|(&t, &s)| (t * t, s.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::Degenerate(format!(
            "only {} thresholds have survival >= {floor}; need 3 to fit",
            pts.len()
        )));
    }
    let m = T::lit(pts.len() as f64);
    let mx = pts.iter().map(|p| p.0).sum::<T>() / m;
    let my = pts.iter().map(|p| p.1).sum::<T>() / m;
    let sxx: T = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: T = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: T = pts.iter().map(|p| (p.1 - my) * (p.1 - my)).sum();
    if sxx == T::zero() {
        return Err(Error::Degenerate("fit thresholds share one t²".into()));
    }
    let slope = sxy / sxx;
    let r_squared = if syy == T::zero() {
        T::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(Fit {
        slope,
        intercept: my - slope * mx,
        r_squared,
        points: pts.len(),
    })
}

/// `‖X : v^{⊗(k-1)}‖₂` for one draw, summed over the `k`-subsets only.
///
/// `U` lives on strictly increasing multiindices, so row `e_0` collects
/// `U_e Π_{j>0} v_{e_j}`. For `D = pJ - (k-1)! A`, row `i` is
/// `p (Σ v)^{k-1} - (k-1)! Σ_{e ∋ i} Π_{j ∈ e∖i} v_j`.
fn statistic<T: Real>(kind: TailKind, n: usize, k: usize, p: f64, v: &[Complex<T>], seed: u64) -> Result<T> {
    let pv = Complex::new(T::lit(p), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let orderings = Complex::new(T::lit(checked_factorial(k as u64 - 1)? as f64), T::zero());
    let draws = edge_draws(n, k, p, seed);
    let mut y = match kind {
        TailKind::Upper => vec![Complex::new(T::zero(), T::zero()); n],
        TailKind::Gap => {
            let s: Complex<T> = v.iter().sum();
            vec![pv * s.powu(k as u32 - 1); n]
        }
    };
    for (e, drawn) in ColexSubsets::new(n, k).zip(draws) {
        match kind {
            TailKind::Upper => {
                let value = if drawn { pv - one } else { pv };
                let tail = e[1..].iter().fold(one, |acc, &j| acc * v[j]);
                y[e[0]] = y[e[0]] + value * tail;
            }
            TailKind::Gap if drawn => {
                for (a, &i) in e.iter().enumerate() {
                    let rest = e
                        .iter()
                        .enumerate()
                        .filter(|&(b, _)| b != a)
                        .fold(one, |acc, (_, &j)| acc * v[j]);
                    y[i] = y[i] - orderings * rest;
                }
            }
            TailKind::Gap => {}
        }
    }
    Ok(norm2(&y))
}

/// Monte Carlo tail of `‖X : v^{⊗(k-1)}‖₂` for `X` drawn from `U(n,k,p)` or `D(n,k,p)`.
///
/// Trial `i` uses the ensemble seed `derive_seed(seed, i)`, so the upper and
/// gap kinds run with the same seed share their edge samples. The fit uses
/// thresholds with survival at least `10 / trials`.
#[allow(clippy::too_many_arguments)]
pub fn tail_estimate<T: Real>(
    kind: TailKind,
    n: usize,
    k: usize,
    p: f64,
    v: &[Complex<T>],
    trials: usize,
    thresholds: Thresholds<T>,
    seed: u64,
) -> Result<TailEstimate<T>> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param(format!("probability p={p} must lie in (0,1)")));
    }
    if trials < 100 {
        return Err(Error::param(format!("need at least 100 trials, got {trials}")));
    }
    if v.len() != n {
        return Err(Error::shape(format!("vector of length {} for dimension {n}", v.len())));
    }
    let norm = norm2(v);
    if (norm - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::Precondition(format!("v must have unit 2-norm, has {norm}")));
    }
    let mut samples = (0..trials)
        .into_par_iter()
        .map(|i| statistic(kind, n, k, p, v, derive_seed(seed, i as u64)))
        .collect::<Result<Vec<T>>>()?;
    samples.sort_by(|a, b| a.partial_cmp(b).expect("norms are finite"));

    let thresholds = match thresholds {
        Thresholds::Explicit(ts) => {
            if ts.windows(2).any(|w| !(w[0] < w[1])) {
                return Err(Error::param("thresholds must be strictly increasing"));
            }
            ts
        }
        Thresholds::Auto(count) => {
            if count < 2 {
                return Err(Error::param("need at least 2 thresholds"));
            }
            let top = *samples.last().expect("trials >= 100");
            (0..count)
                .map(|j| top * (T::lit(j as f64) / T::lit((count - 1) as f64)).sqrt())
                .collect()
        }
    };
    let total = T::lit(trials as f64);
    let survival: Vec<T> = thresholds
        .iter()
        .map(|&t| {
            let below = samples.partition_point(|&x| x < t);
            T::lit((trials - below) as f64) / total
        })
        .collect();

    let floor = T::lit(DEFAULT_FIT_FLOOR_COUNT) / total;
    let mut est = TailEstimate {
        kind,
        n,
        k,
        p,
        trials,
        seed,
        thresholds,
        survival,
        samples,
        fit_c: T::nan(),
        fit_big_c: T::nan(),
        slope: T::nan(),
        r_squared: T::nan(),
        fit_points: 0,
        fit_floor: floor,
    };
    if let Ok(fit) = fit_sub_gaussian(&est.thresholds, &est.survival, floor) {
        est.apply(fit, floor);
    }
    Ok(est)
}

/// The unit vector `1̂/√n`.
pub fn uniform_unit<T: Real>(n: usize) -> Vec<Complex<T>> {
    vec![Complex::new(T::one() / T::lit(n as f64).sqrt(), T::zero()); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn survival_starts_at_one_and_decreases() {
        let v = uniform_unit::<f64>(6);
        let ts: Vec<f64> = (0..20).map(|i| i as f64 * 0.25).collect();
        let e = tail_estimate(TailKind::Upper, 6, 3, 0.5, &v, 200, Thresholds::Explicit(ts), 3).unwrap();
        assert_eq!(e.survival[0], 1.0);
        assert!(e.is_monotone());
        assert!(e.survival.iter().all(|&s| (0.0..=1.0).contains(&s)));
        assert_eq!(e.samples.len(), 200);
    }

    #[test]
    fn rejects_bad_inputs() {
        let v = uniform_unit::<f64>(5);
        let auto = || Thresholds::Auto(10);
        assert!(tail_estimate(TailKind::Gap, 5, 3, 0.0, &v, 100, auto(), 0).is_err());
        assert!(tail_estimate(TailKind::Gap, 5, 3, 1.0, &v, 100, auto(), 0).is_err());
        assert!(tail_estimate(TailKind::Gap, 5, 3, 0.5, &v, 99, auto(), 0).is_err());
        let long: Vec<C> = v.iter().map(|z| z * 2.0).collect();
        assert!(matches!(
            tail_estimate(TailKind::Gap, 5, 3, 0.5, &long, 100, auto(), 0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn statistics_match_dense_ensembles() {
        use crate::ensembles::{random_gap, upper_ensemble};
        use crate::hypermatrix::{apply_vector_power, contract, tensor_power_vector};
        for (n, k) in [(5, 3), (6, 4), (4, 2)] {
            let v: Vec<C> = (0..n).map(|i| C::new(0.1 * i as f64 + 0.2, -0.05 * i as f64)).collect();
            for seed in 0..5 {
                let u = upper_ensemble::<C>(n, k, 0.3, seed).unwrap();
                let slots: Vec<usize> = (1..k).collect();
                let y = contract(&u, &slots, &tensor_power_vector(&v, k - 1).unwrap()).unwrap();
                let got = statistic(TailKind::Upper, n, k, 0.3, &v, seed).unwrap();
                assert!((got - norm2(y.data())).abs() < 1e-12);

                let d = random_gap::<C>(n, k, 0.3, seed).unwrap();
                let y = apply_vector_power(&d, &v, k - 1).unwrap();
                let got = statistic(TailKind::Gap, n, k, 0.3, &v, seed).unwrap();
                assert!((got - norm2(y.values())).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fit_recovers_exact_gaussian_tail() {
        let ts: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let s: Vec<f64> = ts.iter().map(|t| 0.8 * (-1.7 * t * t).exp()).collect();
        let f = fit_sub_gaussian(&ts, &s, 1e-9).unwrap();
        assert!((f.slope + 1.7).abs() < 1e-12);
        assert!((f.intercept.exp() - 0.8).abs() < 1e-12);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn deterministic_under_seed() {
        let v = uniform_unit::<f64>(8);
        let run = || tail_estimate(TailKind::Gap, 8, 3, 0.5, &v, 150, Thresholds::Auto(15), 9).unwrap();
        assert_eq!(run(), run());
    }

    #[test]
    fn gap_tail_dominated_by_union_step() {
        // ‖D:v‖ <= s + Σ_σ ‖σ(U):v‖, with s the norm of the repeated-index part p J_rep : v^{⊗2}
        let (n, k, p, trials) = (12, 3, 0.5, 400);
        let v = uniform_unit::<f64>(n);
        let nf = n as f64;
        let shift = p * (3.0 * nf - 2.0) / nf * nf.sqrt();
        let ts: Vec<f64> = (1..30).map(|i| i as f64 * 0.5).collect();
        let shifted: Vec<f64> = ts.iter().map(|t| t + shift).collect();
        let scaled: Vec<f64> = ts.iter().map(|t| t / 6.0).collect();
        let gap = tail_estimate(TailKind::Gap, n, k, p, &v, trials, Thresholds::Explicit(shifted), 4).unwrap();
        let up = tail_estimate(TailKind::Upper, n, k, p, &v, trials, Thresholds::Explicit(scaled), 4).unwrap();
        for ((t, g), u) in ts.iter().zip(&gap.survival).zip(&up.survival) {
            assert!(*g <= (6.0 * u).min(1.0), "t={t}: {g} > 6 * {u}");
        }
    }
}
