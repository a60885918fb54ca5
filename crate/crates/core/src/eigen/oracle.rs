use nalgebra::DMatrix;
use num_complex::Complex;

use super::enumerate::deduplicate;
use super::{EigenPair, SpectrumReport, DEFAULT_DEGENERACY_TOL};
use crate::error::{Error, Result};
use crate::hypermatrix::SymmetricHypermatrix;
use crate::scalar::{complexify, Real};

/// Classical symmetric eigendecomposition of an order-2 real hypermatrix.
///
/// Eigenvalues are listed with multiplicity in `pairs`; `eigenvalues` holds
/// the distinct values at relative tolerance `1e-10`.
pub fn matrix_oracle(a: &SymmetricHypermatrix<Complex<f64>>) -> Result<SpectrumReport<f64>> {
    if a.order() != 2 {
        return Err(Error::param(format!("matrix oracle needs order 2, got {}", a.order())));
    }
    let real = a
        .real_part()
        .ok_or_else(|| Error::Precondition("matrix oracle needs real entries".into()))?;
    let n = a.dim();
    let m = DMatrix::from_fn(n, n, |i, j| real.get(&[i, j]));
    let eig = m.symmetric_eigen();
    let mut pairs = Vec::with_capacity(n);
    for c in 0..n {
        let v: Vec<f64> = eig.eigenvectors.column(c).iter().copied().collect();
        pairs.push(EigenPair::new(
            a,
            complexify(&v),
            Complex::new(eig.eigenvalues[c], 0.0),
            f64::lit(DEFAULT_DEGENERACY_TOL),
        )?);
    }
    let (_, values) = deduplicate(pairs.clone(), 1e-10);
    pairs.sort_by(|x, y| x.lambda.re.partial_cmp(&y.lambda.re).unwrap());
    Ok(SpectrumReport::from_clusters(pairs, values, n as u64, n, n))
}
