//! Finite-difference checks of the derivatives of
//! `K(X) = ‖W₁^{1/2} X‖²_F` and `k(X) = ⟨W₂ X x₀, X x₀⟩`.

use nalgebra::{DMatrix, DVector};

use super::weight::WeightOperator;
use crate::error::{Error, Result};

/// Below this magnitude the analytic derivative is compared in absolute terms.
const ABSOLUTE_BELOW: f64 = 1e-8;

#[derive(Debug, Clone, Copy)]
pub struct FrechetErrors {
    pub hs_analytic: f64,
    pub hs_error: f64,
    pub quad_analytic: f64,
    pub quad_error: f64,
}

/// `DK(X)(Y) = 2 tr(Xᵀ W₁ Y)`.
pub fn hs_derivative(w1: &WeightOperator, x: &DMatrix<f64>, y: &DMatrix<f64>) -> f64 {
    2.0 * w1.apply_sqrt_mat(x).dot(&w1.apply_sqrt_mat(y))
}

/// `Dk(X)(Y) = 2 ⟨W₂ X x₀, Y x₀⟩`.
pub fn quad_derivative(
    w2: &WeightOperator,
    x0: &DVector<f64>,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
) -> f64 {
    2.0 * w2.apply(&(x * x0)).dot(&(y * x0))
}

/// Central-difference errors of both derivative formulas in direction `Y`.
pub fn frechet_check(
    w1: &WeightOperator,
    w2: &WeightOperator,
    x0: &DVector<f64>,
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    h: f64,
) -> Result<FrechetErrors> {
    if !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
    }
    let m = w1.dim();
    if w2.dim() != m {
        return Err(Error::dim("W2", m, w2.dim()));
    }
    if x.shape() != y.shape() {
        return Err(Error::dim("Y cols", x.ncols(), y.ncols()));
    }
    if x.nrows() != m {
        return Err(Error::dim("X rows", m, x.nrows()));
    }
    if x0.len() != x.ncols() {
        return Err(Error::dim("x0", x.ncols(), x0.len()));
    }

    let big_k = |z: &DMatrix<f64>| w1.apply_sqrt_mat(z).norm_squared();
    let small_k = |z: &DMatrix<f64>| {
        let v = z * x0;
        w2.apply(&v).dot(&v)
    };
    let plus = x + y * h;
    let minus = x - y * h;
    let hs_fd = (big_k(&plus) - big_k(&minus)) / (2.0 * h);
    let quad_fd = (small_k(&plus) - small_k(&minus)) / (2.0 * h);

    let hs_analytic = hs_derivative(w1, x, y);
    let quad_analytic = quad_derivative(w2, x0, x, y);
    Ok(FrechetErrors {
        hs_analytic,
        hs_error: scaled_error(hs_fd, hs_analytic),
        quad_analytic,
        quad_error: scaled_error(quad_fd, quad_analytic),
    })
}

fn scaled_error(fd: f64, analytic: f64) -> f64 {
    let diff = (fd - analytic).abs();
    if analytic.abs() < ABSOLUTE_BELOW {
        diff
    } else {
        diff / analytic.abs()
    }
}
