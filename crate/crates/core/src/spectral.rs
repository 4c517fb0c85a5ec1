//! Unweighted finite-dimensional TLS through the SVD of `(A | b)`, and the
//! minimal direction of a PSD matrix.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional::ser_vec;
use crate::linalg;

const GENERIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct ClassicTlsSolution {
    #[serde(rename = "X", serialize_with = "ser_mat")]
    pub x_op: DMatrix<f64>,
    #[serde(serialize_with = "ser_vec")]
    pub x: DVector<f64>,
    pub sigma_min: f64,
    /// `‖(A | b) − (X | Xx)‖²_F`.
    pub objective: f64,
}

fn ser_mat<S: serde::Serializer>(m: &DMatrix<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()))
}

pub fn solve_classic_tls(a: &DMatrix<f64>, b: &DVector<f64>) -> Result<ClassicTlsSolution> {
    let (m, n) = a.shape();
    if m == 0 || n == 0 {
        return Err(Error::EmptyDimension("A"));
    }
    if b.len() != m {
        return Err(Error::dim("b", m, b.len()));
    }
    let mut aug = DMatrix::zeros(m, n + 1);
    aug.view_mut((0, 0), (m, n)).copy_from(a);
    aug.set_column(n, b);
    // Zero rows leave the right singular vectors unchanged and expose the
    // nullspace when m < n + 1.
    let rows = m.max(n + 1);
    let mut padded = DMatrix::zeros(rows, n + 1);
    padded.view_mut((0, 0), (m, n + 1)).copy_from(&aug);

    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let sigma = |k: usize| svd.singular_values[order[k]];
    let sigma_max = sigma(order.len() - 1);
    let v_of = |k: usize| -> DVector<f64> { v_t.row(order[k]).transpose() };

    if order.len() >= 2 && sigma(1) - sigma(0) <= GENERIC_TOL * sigma_max.max(f64::MIN_POSITIVE) {
        let candidates = (0..2)
            .map(|k| {
                let v = v_of(k);
                if v[n].abs() > GENERIC_TOL {
                    (-v.rows(0, n) / v[n]).iter().copied().collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        return Err(Error::TiedSmallestSingularValue {
            sigma_a: sigma(0),
            sigma_b: sigma(1),
            candidates,
        });
    }

    let v = v_of(0);
    if v[n].abs() <= GENERIC_TOL {
        return Err(Error::ClassicTlsNongeneric { last: v[n] });
    }
    let x = -v.rows(0, n) / v[n];
    let correction = &aug * &v * v.transpose();
    let x_op = a - correction.columns(0, n);
    let fitted = &x_op * &x;
    let mut approx = DMatrix::zeros(m, n + 1);
    approx.view_mut((0, 0), (m, n)).copy_from(&x_op);
    approx.set_column(n, &fitted);
    let objective = (&aug - approx).norm_squared();
    Ok(ClassicTlsSolution {
        x_op,
        x,
        sigma_min: sigma(0),
        objective,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MinDirection {
    #[serde(serialize_with = "ser_vec")]
    pub x: DVector<f64>,
    /// `‖M^{1/2} x‖ = √λ_min`, clamped at zero.
    pub value: f64,
    pub lambda_min: f64,
}

/// Unit eigenvector for the smallest eigenvalue of a symmetric PSD `M`.
pub fn min_direction(m: &DMatrix<f64>) -> Result<MinDirection> {
    if m.nrows() != m.ncols() {
        return Err(Error::dim("M (square)", m.nrows(), m.ncols()));
    }
    if m.nrows() == 0 {
        return Err(Error::EmptyDimension("M"));
    }
    let (vals, vecs) = linalg::sorted_eigen(&((m + m.transpose()) * 0.5));
    let x = vecs.column(0).normalize();
    Ok(MinDirection {
        value: vals[0].max(0.0).sqrt(),
        lambda_min: vals[0],
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consistent_system_is_reproduced() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 0.5, -1.0, 3.0, 0.25]);
        let x0 = DVector::from_row_slice(&[0.7, -1.3]);
        let sol = solve_classic_tls(&a, &(&a * &x0)).unwrap();
        assert!(sol.sigma_min < 1e-12);
        assert!((&sol.x - &x0).norm() < 1e-10);
        assert!((&sol.x_op - &a).norm() < 1e-10);
    }

    #[test]
    fn tied_singular_values() {
        let a = DMatrix::from_row_slice(2, 1, &[1.0, 0.0]);
        let b = DVector::from_row_slice(&[0.0, 1.0]);
        assert!(matches!(solve_classic_tls(&a, &b), Err(Error::TiedSmallestSingularValue { .. })));
    }

    #[test]
    fn zero_last_component() {
        // The smallest singular value 0.1 belongs to e₂, which has no b-component.
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.1, 0.0, 0.0]);
        let b = DVector::from_row_slice(&[0.0, 0.0, 1.0]);
        assert!(matches!(solve_classic_tls(&a, &b), Err(Error::ClassicTlsNongeneric { .. })));
    }

    #[test]
    fn constraint_holds_exactly() {
        let a = DMatrix::from_row_slice(4, 2, &[1.0, 0.2, -0.3, 1.1, 0.8, 0.4, 0.1, -0.9]);
        let b = DVector::from_row_slice(&[0.5, 1.0, -0.2, 0.3]);
        let sol = solve_classic_tls(&a, &b).unwrap();
        assert!((sol.objective - sol.sigma_min.powi(2)).abs() <= 1e-10 * (1.0 + sol.objective));
    }

    #[test]
    fn min_direction_examples() {
        let d = min_direction(&DMatrix::from_diagonal(&DVector::from_row_slice(&[1.0, 1e-8]))).unwrap();
        assert!((d.x[1].abs() - 1.0).abs() < 1e-15);
        assert!((d.value - 1e-4).abs() < 1e-16);
        let d = min_direction(&DMatrix::identity(3, 3)).unwrap();
        assert!((d.value - 1.0).abs() < 1e-15);
        // (w a²)_k = 1/k⁴ with a_k = 1/k, w_k = 1/k²; the smallest is 1/10⁴ at k = 10.
        let diag = DVector::from_fn(10, |i, _| ((i + 1) as f64).powi(-4));
        let d = min_direction(&DMatrix::from_diagonal(&diag)).unwrap();
        assert!((d.value - 0.01).abs() < 1e-15);
    }
}
