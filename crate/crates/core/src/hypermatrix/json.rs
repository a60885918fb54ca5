use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::SymmetricHypermatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// JSON debug form of a symmetric hypermatrix.
///
/// `entries` lists `[sorted 1-based multiindex, re, im]` for every nonzero
/// stored entry; omitted entries are zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypermatrixJson {
    pub order: usize,
    pub dim: usize,
    pub entries: Vec<(Vec<usize>, f64, f64)>,
}

impl HypermatrixJson {
    pub fn from_hypermatrix<T: Real>(a: &SymmetricHypermatrix<Complex<T>>) -> Self {
        let entries = a
            .iter()
            .filter(|(_, z)| z.re != T::zero() || z.im != T::zero())
            .map(|(idx, z)| (idx.iter().map(|i| i + 1).collect(), z.re.as_f64(), z.im.as_f64()))
            .collect();
        Self {
            order: a.order(),
            dim: a.dim(),
            entries,
        }
    }

    pub fn to_hypermatrix<T: Real>(&self) -> Result<SymmetricHypermatrix<Complex<T>>> {
        let mut out = SymmetricHypermatrix::zeros(self.dim, self.order)?;
        let mut seen = std::collections::HashSet::new();
        for (labels, re, im) in &self.entries {
            if labels.len() != self.order {
                return Err(Error::Parse(format!(
                    "multiindex {labels:?} has length {}, order is {}",
                    labels.len(),
                    self.order
                )));
            }
            if labels.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::Parse(format!("multiindex {labels:?} is not sorted")));
            }
            if labels.iter().any(|&l| l == 0 || l > self.dim) {
                return Err(Error::Parse(format!("multiindex {labels:?} outside 1..={}", self.dim)));
            }
            if !seen.insert(labels.clone()) {
                return Err(Error::Parse(format!("duplicate multiindex {labels:?}")));
            }
            let idx: Vec<usize> = labels.iter().map(|l| l - 1).collect();
            out.set(&idx, Complex::new(T::lit(*re), T::lit(*im)))?;
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}
