//! Homogeneous eigenstructure of symmetric hypermatrices arising from complete
//! and random uniform hypergraphs.
//!
//! The algebra is generic over the entry scalar ([`scalar::Scalar`]): complex
//! floats for eigen computations, exact rationals for counting identities.
//! Numerical layers are generic over [`scalar::Real`] (`f32` or `f64`). The
//! aliases below fix the common concrete choices.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod combinatorics;
pub mod eigen;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod hypergraph;
pub mod hypermatrix;
pub mod linalg;
pub mod path;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use hypermatrix::{GeneralHypermatrix, HypermatrixView, MultiIndex, SymmetricHypermatrix};

pub use num_complex::{Complex, Complex32, Complex64};
pub use num_rational::Rational64;

/// Complex double-precision symmetric hypermatrix, the default working type.
pub type Hypermatrix = SymmetricHypermatrix<Complex64>;
/// Complex single-precision symmetric hypermatrix.
pub type Hypermatrix32 = SymmetricHypermatrix<Complex32>;
/// Dense complex double-precision hypermatrix.
pub type DenseHypermatrix = GeneralHypermatrix<Complex64>;
/// Exact rational symmetric hypermatrix for counting identities.
pub type ExactHypermatrix = SymmetricHypermatrix<Rational64>;
/// Real double-precision symmetric hypermatrix.
pub type RealHypermatrix = SymmetricHypermatrix<f64>;

pub type EigenPair = eigen::EigenPair<f64>;
pub type SpectrumReport = eigen::SpectrumReport<f64>;
pub type LinePath = path::LinePath<f64>;
pub type EigenCurve = path::EigenCurve<f64>;
