//! Small dense linear-algebra helpers shared by the solvers.

use nalgebra::{DMatrix, DVector};

/// Default relative singular-value cutoff for rank and nullspace decisions.
pub const RANK_RTOL: f64 = 1e-10;

/// Symmetric eigendecomposition with eigenvalues sorted ascending.
///
/// Column `i` of the returned matrix is the eigenvector for eigenvalue `i`.
pub fn sorted_eigen(m: &DMatrix<f64>) -> (DVector<f64>, DMatrix<f64>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn lambda_min(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()))
}

/// Orthonormal basis (as columns) of the numerical nullspace of `t`.
///
/// Singular values at or below `rtol * sigma_max` count as zero. A matrix with
/// fewer rows than columns is zero-padded so the SVD yields a full right basis.
pub fn nullspace_basis(t: &DMatrix<f64>, rtol: f64) -> DMatrix<f64> {
    let n = t.ncols();
    let rows = t.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (t.nrows(), n)).copy_from(t);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cutoff = rtol * sigma_max;
    let null: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| sigma_max == 0.0 || svd.singular_values[i] <= cutoff)
        .collect();
    let mut basis = DMatrix::zeros(n, null.len());
    for (k, &i) in null.iter().enumerate() {
        basis.set_column(k, &v_t.row(i).transpose());
    }
    basis
}

/// Minimum-norm least-squares solution of `m y ≈ rhs` with a relative rank cutoff.
pub fn lstsq(m: &DMatrix<f64>, rhs: &DVector<f64>, rtol: f64) -> DVector<f64> {
    if m.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = m.clone().svd(true, true);
    let sigma_max = svd.singular_values.iter().copied().fold(0.0, f64::max);
    if sigma_max == 0.0 {
        return DVector::zeros(m.ncols());
    }
    svd.solve(rhs, rtol * sigma_max)
        .expect("both singular vector sets were computed")
}
