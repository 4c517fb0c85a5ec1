//! Weighted and Tikhonov-regularized total least squares on finite-dimensional
//! truncations of Hilbert-space models.
//!
//! The regularized problem
//!
//! ```text
//! min_{X, x} ‖Tx‖² + ‖A − X‖²_{2,W} + ‖Xx − b‖²_W
//! ```
//!
//! is reduced to minimizing `G(x) = ‖Ax − b‖²_W / (1 + ‖x‖²) + ‖Tx‖²`
//! ([`reduction`]), solved by a Dinkelbach scheme ([`fractional`]) and
//! cross-checked with a semidefinite characterization of `inf G`
//! ([`certificate`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod error;
pub mod fractional;
pub mod io;
pub mod lab;
pub mod linalg;
pub mod model;
pub mod random;
pub mod reduction;
pub mod spectral;

pub use error::{Error, Result};
pub use model::{PairReport, PairStatus, ProblemSpec, Regularizer, WeightOperator};
