use num_complex::Complex;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::DENSE_LIMIT;
use crate::error::{Error, Result};
use crate::hypermatrix::normalize_unit;
use crate::rng::{complex_gaussian, derive_seed, stream};
use crate::scalar::Real;

/// The normalized complex grid `V'` with spacing `δ = 1/(4k√n)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetSpec<T> {
    pub n: usize,
    pub k: usize,
    pub delta: T,
    /// Grid coordinates `δ(s + s'i)` use integers `|s|, |s'| <= radius = ⌊1/δ⌋`.
    pub radius: i64,
    /// `(2 radius + 1)^{2n}` raw grid points, the zero point included.
    pub grid_size: u128,
    /// `(5δ)^{-2n}`.
    pub size_bound: T,
    /// Unit vectors of `V'`, `n` consecutive entries each, sorted by `Re w_0`.
    #[serde(skip)]
    coords: Vec<Complex<T>>,
}

impl<T: Real> NetSpec<T> {
    /// `|V'|`.
    pub fn len(&self) -> usize {
        self.coords.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[Complex<T>] {
        &self.coords[i * self.n..(i + 1) * self.n]
    }

    pub fn points(&self) -> impl Iterator<Item = &[Complex<T>]> {
        self.coords.chunks_exact(self.n)
    }

    pub fn within_size_bound(&self) -> bool {
        T::lit(self.len() as f64) <= self.size_bound
    }
}

pub fn net_delta<T: Real>(n: usize, k: usize) -> T {
    T::one() / (T::lit(4.0 * k as f64) * T::lit(n as f64).sqrt())
}

/// `(5δ)^{-2n}`.
pub fn net_size_bound<T: Real>(n: usize, k: usize) -> T {
    (T::lit(5.0) * net_delta::<T>(n, k)).powi(-2 * n as i32)
}

/// Builds `V'` from the grid `{δ(s + s'i)}ⁿ`.
///
/// Two grid points normalize to the same unit vector exactly when their
/// integer coordinate vectors have the same primitive part, so `V'` is
/// enumerated as the primitive integer vectors of the box (gcd 1).
pub fn build_net<T: Real>(n: usize, k: usize) -> Result<NetSpec<T>> {
    if n == 0 || k < 2 {
        return Err(Error::param(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    let delta = net_delta::<T>(n, k);
    let radius = (T::one() / delta).floor().to_i64().expect("small radius");
    let side = (2 * radius + 1) as u128;
    let grid_size = side
        .checked_pow(2 * n as u32)
        .filter(|&g| g <= DENSE_LIMIT)
        .ok_or_else(|| {
            let need = side.checked_pow(2 * n as u32).unwrap_or(u128::MAX);
            Error::capacity("ε-net grid ((2⌊1/δ⌋+1)^{2n} points)", need, DENSE_LIMIT)
        })?;
    let dims = 2 * n;
    let mut points: Vec<Vec<Complex<T>>> = (0..grid_size as u64)
        .into_par_iter()
        .filter_map(|code| {
            let mut ints = vec![0i64; dims];
            let mut c = code;
            for x in ints.iter_mut() {
                *x = (c % side as u64) as i64 - radius;
                c /= side as u64;
            }
            let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
            (g == 1).then_some(ints)
        })
        .map(|ints| {
            let w: Vec<Complex<T>> = ints
                .chunks_exact(2)
                .map(|c| Complex::new(T::lit(c[0] as f64), T::lit(c[1] as f64)) * delta)
                .collect();
            normalize_unit(&w).expect("primitive vectors are nonzero")
        })
        .collect();
    points.sort_by(|a, b| a[0].re.partial_cmp(&b[0].re).expect("finite"));
    let coords = points.concat();
    Ok(NetSpec {
        n,
        k,
        delta,
        radius,
        grid_size,
        size_bound: net_size_bound::<T>(n, k),
        coords,
    })
}

/// `max_j max(|Re(v_j - w_j)|, |Im(v_j - w_j)|)`.
pub fn coord_gap<T: Real>(v: &[Complex<T>], w: &[Complex<T>]) -> T {
    v.iter()
        .zip(w)
        .map(|(a, b)| {
            let d = a - b;
            d.re.abs().max(d.im.abs())
        })
        .fold(T::zero(), T::max)
}

/// Outcome of probing a net with random unit vectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverCheck<T> {
    pub samples: usize,
    pub delta: T,
    /// Worst nearest-point distance over the probes.
    pub max_coord_gap: T,
    pub worst_probe: Vec<Complex<T>>,
    pub pass: bool,
}

/// Exact nearest-point gap; the scan leaves `v_0` outwards and stops once
/// `|Re(w_0 - v_0)|` alone exceeds the best gap.
fn nearest_gap<T: Real>(net: &NetSpec<T>, v: &[Complex<T>]) -> T {
    let len = net.len();
    let key = |i: usize| net.point(i)[0].re;
    let mid = {
        let (mut lo, mut hi) = (0, len);
        while lo < hi {
            let m = (lo + hi) / 2;
            if key(m) < v[0].re {
                lo = m + 1;
            } else {
                hi = m;
            }
        }
        lo
    };
    let mut best = T::infinity();
    for i in mid..len {
        if key(i) - v[0].re > best {
            break;
        }
        best = best.min(coord_gap(v, net.point(i)));
    }
    for i in (0..mid).rev() {
        if v[0].re - key(i) > best {
            break;
        }
        best = best.min(coord_gap(v, net.point(i)));
    }
    best
}

fn probes<T: Real>(n: usize, samples: usize, seed: u64) -> Vec<Vec<Complex<T>>> {
    (0..samples)
        .map(|i| {
            let mut rng = stream(derive_seed(seed, i as u64));
            loop {
                if let Ok(v) = normalize_unit(&complex_gaussian::<T>(&mut rng, n)) {
                    break v;
                }
            }
        })
        .collect()
}

fn summarize<T: Real>(delta: T, gaps: Vec<(T, Vec<Complex<T>>)>) -> CoverCheck<T> {
    let samples = gaps.len();
    let (max_coord_gap, worst_probe) =
        gaps.into_iter().fold(
            (T::neg_infinity(), Vec::new()),
            |acc, g| if g.0 > acc.0 { g } else { acc },
        );
    CoverCheck {
        samples,
        delta,
        max_coord_gap,
        worst_probe,
        pass: max_coord_gap <= delta + T::lit(1e-12),
    }
}

/// Nearest net point (coordinatewise metric) for `samples` random unit probes.
pub fn net_cover_check<T: Real>(net: &NetSpec<T>, samples: usize, seed: u64) -> Result<CoverCheck<T>> {
    if net.is_empty() {
        return Err(Error::param("net has no points"));
    }
    if samples == 0 {
        return Err(Error::param("need at least one probe"));
    }
    let gaps = probes::<T>(net.n, samples, seed)
        .into_par_iter()
        .map(|v| (nearest_gap(net, &v), v))
        .collect();
    Ok(summarize(net.delta, gaps))
}

/// Coverage without instantiating `V'`: each probe is rounded coordinatewise
/// to the grid and normalized, and the gap to that single point is measured.
pub fn rounding_cover_check<T: Real>(n: usize, k: usize, samples: usize, seed: u64) -> Result<CoverCheck<T>> {
    if n == 0 || k < 2 || samples == 0 {
        return Err(Error::param("need n >= 1, k >= 2 and at least one probe"));
    }
    let delta = net_delta::<T>(n, k);
    let radius = (T::one() / delta).floor();
    let round = |x: T| (x / delta).round().max(-radius).min(radius) * delta;
    let gaps = probes::<T>(n, samples, seed)
        .into_par_iter()
        .map(|v| {
            let w: Vec<Complex<T>> = v.iter().map(|z| Complex::new(round(z.re), round(z.im))).collect();
            let gap = match normalize_unit(&w) {
                Ok(w) => coord_gap(&v, &w),
                Err(_) => T::infinity(),
            };
            (gap, v)
        })
        .collect();
    Ok(summarize(delta, gaps))
}
