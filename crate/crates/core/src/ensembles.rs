//! Hypermatrices derived from hypergraphs: adjacency, the complete gap
//! `B(n,k)`, the random gap `D(n,k,p)`, the upper ensemble `U(n,k,p)` and the
//! symmetric sign ensemble `2 D(n,k,1/2)`.
//!
//! `D`, `U` and `G_k(n,p)` drawn from the same seed share the same edge sample.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{all_distinct, checked_factorial, ColexSubsets};
use crate::error::{Error, Result};
use crate::hypergraph::{edge_draws, Hypergraph};
use crate::hypermatrix::{GeneralHypermatrix, SymmetricHypermatrix};
use crate::scalar::{from_count, Scalar};

fn inverse_factorial<S: Scalar>(m: u64) -> Result<S> {
    Ok(S::one() / from_count::<S>(checked_factorial(m)?))
}

fn scalar_from_f64<S: Scalar>(x: f64) -> Result<S> {
    S::from_f64(x).ok_or_else(|| Error::param(format!("{x} not representable in scalar type")))
}

fn check_open_probability(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!("probability p={p} must lie in (0,1)")))
    }
}

/// Adjacency hypermatrix: `1/(k-1)!` on every ordering of an edge, 0 elsewhere.
pub fn adjacency_hypermatrix<S: Scalar>(h: &Hypergraph) -> Result<SymmetricHypermatrix<S>> {
    let k = h.uniformity();
    let weight: S = inverse_factorial(k as u64 - 1)?;
    let mut a = SymmetricHypermatrix::zeros(h.vertex_count(), k)?;
    for e in h.edges() {
        a.set(e, weight.clone())?;
    }
    Ok(a)
}

/// `B(n,k) = J/(k-1)! - A(K_n^k)`, defined for `n > k`.
pub fn complete_gap<S: Scalar>(n: usize, k: usize) -> Result<SymmetricHypermatrix<S>> {
    if k < 2 || n <= k {
        return Err(Error::param(format!("complete gap needs n > k >= 2, got n={n}, k={k}")));
    }
    let scaled_ones = SymmetricHypermatrix::<S>::all_ones(n, k)?.scale(&inverse_factorial(k as u64 - 1)?);
    let adjacency = adjacency_hypermatrix(&Hypergraph::complete(n, k)?)?;
    scaled_ones.sub(&adjacency)
}

/// `D(n,k,p) = p J - (k-1)! A(G_k(n,p))`.
///
/// Entries are `p - 1` on orderings of sampled edges and `p` everywhere else,
/// including every multiindex with a repeated vertex.
pub fn random_gap<S: Scalar>(n: usize, k: usize, p: f64, seed: u64) -> Result<SymmetricHypermatrix<S>> {
    check_open_probability(p)?;
    let g = Hypergraph::random(n, k, p, seed)?;
    random_gap_from(&g, p)
}

/// `D` built from an already sampled hypergraph.
pub fn random_gap_from<S: Scalar>(g: &Hypergraph, p: f64) -> Result<SymmetricHypermatrix<S>> {
    check_open_probability(p)?;
    let pv: S = scalar_from_f64(p)?;
    let mut d = SymmetricHypermatrix::from_fn(g.vertex_count(), g.uniformity(), |_| pv.clone())?;
    let edge_value = pv - S::one();
    for e in g.edges() {
        d.set(e, edge_value.clone())?;
    }
    Ok(d)
}

/// The symmetric sign ensemble `2 D(n,k,1/2)`.
pub fn sign_ensemble<S: Scalar>(n: usize, k: usize, seed: u64) -> Result<SymmetricHypermatrix<S>> {
    let two = S::one() + S::one();
    Ok(random_gap::<S>(n, k, 0.5, seed)?.scale(&two))
}

/// `U(n,k,p)`: on strictly increasing multiindices `p - 1` with probability `p`
/// (a sampled edge) and `p` otherwise; zero off the strictly increasing support.
pub fn upper_ensemble<S: Scalar>(n: usize, k: usize, p: f64, seed: u64) -> Result<GeneralHypermatrix<S>> {
    check_open_probability(p)?;
    if k < 2 || n < k {
        return Err(Error::param(format!("need n >= k >= 2, got n={n}, k={k}")));
    }
    let pv: S = scalar_from_f64(p)?;
    let edge_value = pv.clone() - S::one();
    let mut u = GeneralHypermatrix::zeros(n, k)?;
    for (e, drawn) in ColexSubsets::new(n, k).zip(edge_draws(n, k, p, seed)) {
        let v = if drawn { edge_value.clone() } else { pv.clone() };
        u.set(&e, v)?;
    }
    Ok(u)
}

/// Which derived hypermatrix an [`EnsembleSpec`] samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnsembleKind {
    CompleteGap,
    RandomGap,
    Upper,
    Sign,
}

/// A fully determined ensemble draw.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub seed: u64,
    pub kind: EnsembleKind,
}

/// Result of sampling an [`EnsembleSpec`].
#[derive(Debug, Clone)]
pub enum EnsembleSample<S> {
    Symmetric(SymmetricHypermatrix<S>),
    General(GeneralHypermatrix<S>),
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        match self.kind {
            EnsembleKind::CompleteGap => Ok(()),
            EnsembleKind::Sign => Ok(()),
            EnsembleKind::RandomGap | EnsembleKind::Upper => check_open_probability(self.p),
        }
    }

    pub fn sample<S: Scalar>(&self) -> Result<EnsembleSample<S>> {
        self.validate()?;
        let (n, k) = (self.n, self.k);
        Ok(match self.kind {
            EnsembleKind::CompleteGap => EnsembleSample::Symmetric(complete_gap(n, k)?),
            EnsembleKind::RandomGap => EnsembleSample::Symmetric(random_gap(n, k, self.p, self.seed)?),
            EnsembleKind::Sign => EnsembleSample::Symmetric(sign_ensemble(n, k, self.seed)?),
            EnsembleKind::Upper => EnsembleSample::General(upper_ensemble(n, k, self.p, self.seed)?),
        })
    }
}

/// True when the sorted multiindex has a repeated vertex.
pub fn has_repeat(sorted: &[usize]) -> bool {
    !all_distinct(sorted)
}
