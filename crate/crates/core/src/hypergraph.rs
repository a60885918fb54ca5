//! Uniform hypergraphs and their plain-text edge-list format.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::combinatorics::{colex_rank, ColexSubsets};
use crate::error::{Error, Result};
use crate::rng;

/// A `k`-uniform hypergraph on vertices `0..n`.
///
/// Edges are sorted vertex lists kept in colexicographic order; the position
/// of an edge in that order is its canonical index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    edges: Vec<Vec<usize>>,
}

fn check_uniformity(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::param(format!("uniformity k={k} must be >= 2")));
    }
    if n < k {
        return Err(Error::param(format!("need n >= k, got n={n}, k={k}")));
    }
    Ok(())
}

impl Hypergraph {
    /// Validates and canonicalizes an edge list (0-based vertices).
    pub fn new(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        check_uniformity(n, k)?;
        let mut seen = HashSet::with_capacity(edges.len());
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != k {
                return Err(Error::param(format!("edge {e:?} does not have {k} vertices")));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::param(format!("edge {e:?} repeats a vertex")));
            }
            if e[k - 1] >= n {
                return Err(Error::param(format!("edge {e:?} has a vertex outside 0..{n}")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::param(format!("duplicate edge {e:?}")));
            }
            canon.push(e);
        }
        canon.sort_by_key(|e| colex_rank(e));
        Ok(Self { n, k, edges: canon })
    }

    /// The complete hypergraph `K_n^k`.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        check_uniformity(n, k)?;
        Ok(Self {
            n,
            k,
            edges: ColexSubsets::new(n, k).collect(),
        })
    }

    /// Erdős–Rényi `G_k(n, p)`: each `k`-subset kept independently with probability `p`.
    pub fn random(n: usize, k: usize, p: f64, seed: u64) -> Result<Self> {
        check_uniformity(n, k)?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::param(format!("edge probability p={p} outside [0,1]")));
        }
        let draws = edge_draws(n, k, p, seed);
        let edges = ColexSubsets::new(n, k)
            .zip(draws)
            .filter_map(|(e, keep)| keep.then_some(e))
            .collect();
        Ok(Self { n, k, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn uniformity(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        let mut e = edge.to_vec();
        e.sort_unstable();
        self.edges
            .binary_search_by_key(&colex_rank(&e), |x| colex_rank(x))
            .is_ok()
    }

    /// Number of edges containing vertex `j`.
    pub fn degree(&self, j: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&j)).count()
    }

    /// Text form: `k n m`, then one line of increasing 1-based labels per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.k, self.n, self.edges.len());
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).enumerate().filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse("empty hypergraph file".into()))?;
        let head = parse_numbers(header, 0)?;
        let [k, n, m] = head[..] else {
            return Err(Error::Parse(format!("header `{header}` must be `k n m`")));
        };
        check_uniformity(n, k).map_err(|e| Error::Parse(e.to_string()))?;
        let mut edges = Vec::with_capacity(m);
        let mut seen = HashSet::with_capacity(m);
        for (lineno, line) in lines {
            let labels = parse_numbers(line, lineno)?;
            if labels.len() != k {
                return Err(Error::Parse(format!(
                    "line {}: expected {k} labels, found {}",
                    lineno + 1,
                    labels.len()
                )));
            }
            if labels.iter().any(|&l| l == 0 || l > n) {
                return Err(Error::Parse(format!("line {}: label outside 1..={n}", lineno + 1)));
            }
            if labels.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Parse(format!(
                    "line {}: labels must be strictly increasing",
                    lineno + 1
                )));
            }
            let e: Vec<usize> = labels.iter().map(|l| l - 1).collect();
            if !seen.insert(e.clone()) {
                return Err(Error::Parse(format!("line {}: duplicate edge", lineno + 1)));
            }
            edges.push(e);
        }
        if edges.len() != m {
            return Err(Error::Parse(format!(
                "header announces {m} edges, file lists {}",
                edges.len()
            )));
        }
        Self::new(n, k, edges).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {}: bad integer `{tok}`", lineno + 1)))
        })
        .collect()
}

/// Inclusion indicators for every `k`-subset in canonical (colex) order.
pub fn edge_draws(n: usize, k: usize, p: f64, seed: u64) -> Vec<bool> {
    let count = crate::combinatorics::binomial(n as u64, k as u64).unwrap_or(0) as usize;
    rng::bernoullis(seed, count, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_edge_counts() {
        assert_eq!(Hypergraph::complete(3, 3).unwrap().edge_count(), 1);
        assert_eq!(Hypergraph::complete(5, 3).unwrap().edge_count(), 10);
        assert_eq!(Hypergraph::complete(4, 2).unwrap().edge_count(), 6);
        assert!(matches!(Hypergraph::complete(2, 3), Err(Error::Parameter(_))));
    }

    #[test]
    fn random_degenerate_probabilities() {
        let full = Hypergraph::random(6, 3, 1.0, 9).unwrap();
        assert_eq!(full, Hypergraph::complete(6, 3).unwrap());
        assert_eq!(Hypergraph::random(6, 3, 0.0, 9).unwrap().edge_count(), 0);
        assert!(Hypergraph::random(6, 3, 1.5, 9).is_err());
        assert!(Hypergraph::random(6, 3, -0.1, 9).is_err());
    }

    #[test]
    fn random_is_seed_deterministic() {
        let a = Hypergraph::random(12, 3, 0.3, 5).unwrap();
        let b = Hypergraph::random(12, 3, 0.3, 5).unwrap();
        let c = Hypergraph::random(12, 3, 0.3, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn validation() {
        assert!(Hypergraph::new(4, 3, vec![vec![0, 1, 1]]).is_err());
        assert!(Hypergraph::new(4, 3, vec![vec![0, 1, 4]]).is_err());
        assert!(Hypergraph::new(4, 3, vec![vec![0, 1, 2], vec![2, 1, 0]]).is_err());
        let h = Hypergraph::new(4, 3, vec![vec![3, 1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![1, 2, 3]]);
        assert!(h.contains(&[2, 3, 1]));
        assert!(!h.contains(&[0, 1, 3]));
        assert_eq!(h.degree(1), 2);
    }

    #[test]
    fn text_round_trip_and_colex_writer() {
        let h = Hypergraph::new(5, 3, vec![vec![2, 3, 4], vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let text = h.to_text();
        assert_eq!(text, "3 5 3\n1 2 3\n1 2 4\n3 4 5\n");
        assert_eq!(Hypergraph::from_text(&text).unwrap(), h);
    }

    #[test]
    fn reader_rejects_malformed_input() {
        for bad in [
            "",
            "3 5\n",
            "3 5 1\n1 2\n",
            "3 5 1\n1 2 6\n",
            "3 5 1\n2 1 3\n",
            "3 5 2\n1 2 3\n1 2 3\n",
            "3 5 2\n1 2 3\n",
            "3 5 1\n1 2 x\n",
            "3 5 1\n1 1 2\n",
        ] {
            assert!(
                matches!(Hypergraph::from_text(bad), Err(Error::Parse(_))),
                "accepted {bad:?}"
            );
        }
    }
}
