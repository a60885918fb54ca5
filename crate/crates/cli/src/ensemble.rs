use std::path::PathBuf;

use hyperspectra::ensembles::{adjacency_hypermatrix, complete_gap, random_gap, sign_ensemble};
use hyperspectra::hypermatrix::HypermatrixJson;
use hyperspectra::rng::{real_gaussian, stream};
use hyperspectra::{Complex64, Error, Hypergraph, Hypermatrix, Result};

/// Parsed `--ensemble` / `--a0` / `--a1` value.
#[derive(Debug, Clone, PartialEq)]
pub enum Ensemble {
    Identity,
    Ones,
    CompleteGap,
    RandomGap(f64),
    Sign,
    Upper(f64),
    /// Real standard Gaussian entries on the compact storage.
    Gaussian,
    File(PathBuf),
}

fn probability(s: &str) -> Result<f64> {
    s.parse::<f64>()
        .ok()
        .filter(|p| *p > 0.0 && *p < 1.0)
        .ok_or_else(|| Error::Parameter(format!("probability `{s}` must be a number in (0,1)")))
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let e = match (head, arg) {
            ("identity", None) => Ensemble::Identity,
            ("ones", None) => Ensemble::Ones,
            ("complete-gap", None) => Ensemble::CompleteGap,
            ("sign", None) => Ensemble::Sign,
            ("gaussian", None) => Ensemble::Gaussian,
            ("random-gap", Some(p)) => Ensemble::RandomGap(probability(p)?),
            ("upper", Some(p)) => Ensemble::Upper(probability(p)?),
            ("file", Some(path)) if !path.is_empty() => Ensemble::File(path.into()),
            _ => {
                return Err(Error::Parameter(format!(
                    "bad ensemble `{s}`; expected identity | ones | complete-gap | random-gap:p | sign | upper:p | gaussian | file:PATH"
                )))
            }
        };
        Ok(e)
    }
}

/// Reads a hypermatrix from JSON, or a hypergraph edge list turned into its adjacency hypermatrix.
pub fn read_input(path: &std::path::Path) -> Result<Hypermatrix> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Parameter(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        HypermatrixJson::from_json_str(&text)?.to_hypermatrix()
    } else {
        adjacency_hypermatrix(&Hypergraph::from_text(&text)?)
    }
}

impl Ensemble {
    /// Draws the hypermatrix; `shape` is required except for files.
    pub fn build(&self, shape: Option<(usize, usize)>, seed: u64) -> Result<Hypermatrix> {
        if let Ensemble::File(path) = self {
            return read_input(path);
        }
        let (n, k) =
            shape.ok_or_else(|| Error::Parameter("--n and --k are required for generated ensembles".into()))?;
        match *self {
            Ensemble::Identity => Hypermatrix::identity(n, k),
            Ensemble::Ones => Hypermatrix::all_ones(n, k),
            Ensemble::CompleteGap => complete_gap(n, k),
            Ensemble::RandomGap(p) => random_gap(n, k, p, seed),
            Ensemble::Sign => sign_ensemble(n, k, seed),
            Ensemble::Gaussian => {
                let mut rng = stream(seed);
                Hypermatrix::from_fn(n, k, |_| Complex64::new(real_gaussian::<f64>(&mut rng, 1)[0], 0.0))
            }
            Ensemble::Upper(_) => Err(Error::Parameter(
                "upper:p is not symmetric; eigen and path commands need a symmetric hypermatrix".into(),
            )),
            Ensemble::File(_) => unreachable!(),
        }
    }
}
