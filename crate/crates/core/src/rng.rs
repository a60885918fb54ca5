//! Seeded randomness.
//!
//! Edge draws come from a ChaCha8 keystream keyed by the run seed and read at
//! word position `2 * edge_index`, so the draw for an edge depends only on
//! `(seed, canonical edge index)` and not on evaluation order or chunking.

use num_complex::Complex;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::scalar::Real;

const CHUNK: usize = 4096;

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent child seed, e.g. one per Monte Carlo trial.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    mix64(base ^ mix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

#[inline]
fn unit_interval(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform `[0, 1)` draw for one canonical index.
pub fn uniform_at(seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_word_pos(2 * index as u128);
    unit_interval(rng.next_u64())
}

/// Uniform draws for indices `0..count`; identical to `uniform_at` per index.
pub fn uniforms(seed: u64, count: usize) -> Vec<f64> {
    let mut out = vec![0.0; count];
    out.par_chunks_mut(CHUNK).enumerate().for_each(|(c, chunk)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_word_pos(2 * (c * CHUNK) as u128);
        for x in chunk.iter_mut() {
            *x = unit_interval(rng.next_u64());
        }
    });
    out
}

/// Bernoulli(p) indicators for indices `0..count`.
pub fn bernoullis(seed: u64, count: usize, p: f64) -> Vec<bool> {
    uniforms(seed, count).into_iter().map(|u| u < p).collect()
}

/// Sequential generator for start vectors and probes.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian vector (independent N(0,1) real and imaginary parts).
pub fn complex_gaussian<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex<T>> {
    (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex::new(T::lit(re), T::lit(im))
        })
        .collect()
}

/// Standard real Gaussian vector.
pub fn real_gaussian<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(StandardNormal.sample(rng))).collect()
}
