use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Storage of a weight operator as supplied by the caller.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    Diagonal(DVector<f64>),
    Dense(DMatrix<f64>),
}

/// A positive semidefinite weight `W` together with its square root.
///
/// The square root is formed once at construction. Eigenvalues that are
/// negative but within `eig_floor * lambda_max` are clamped to zero.
#[derive(Debug, Clone)]
pub struct WeightOperator {
    kind: WeightKind,
    sqrt: DMatrix<f64>,
    eig_floor: f64,
}

impl WeightOperator {
    pub const DEFAULT_EIG_FLOOR: f64 = 1e-12;
    const SYMMETRY_RTOL: f64 = 1e-12;

    pub fn identity(m: usize) -> Self {
        Self::diagonal(DVector::from_element(m, 1.0)).expect("identity is PSD")
    }

    pub fn diagonal(d: DVector<f64>) -> Result<Self> {
        Self::diagonal_with_floor(d, Self::DEFAULT_EIG_FLOOR)
    }

    pub fn diagonal_with_floor(d: DVector<f64>, eig_floor: f64) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::EmptyDimension("W"));
        }
        check_finite(d.iter(), "W.data")?;
        let lmax = d.iter().copied().fold(0.0_f64, f64::max);
        let lmin = d.iter().copied().fold(f64::INFINITY, f64::min);
        let floor = eig_floor * lmax;
        if lmin < -floor {
            return Err(Error::NotPsd {
                min_eig: lmin,
                floor,
            });
        }
        let clamped = d.map(|v| v.max(0.0));
        let sqrt = DMatrix::from_diagonal(&clamped.map(f64::sqrt));
        Ok(Self {
            kind: WeightKind::Diagonal(clamped),
            sqrt,
            eig_floor,
        })
    }

    pub fn dense(w: DMatrix<f64>) -> Result<Self> {
        Self::dense_with_floor(w, Self::DEFAULT_EIG_FLOOR)
    }

    pub fn dense_with_floor(w: DMatrix<f64>, eig_floor: f64) -> Result<Self> {
        if w.nrows() == 0 {
            return Err(Error::EmptyDimension("W"));
        }
        if w.nrows() != w.ncols() {
            return Err(Error::dim("W (square)", w.nrows(), w.ncols()));
        }
        check_finite(w.iter(), "W.data")?;
        let asymmetry = linalg::max_abs(&(&w - w.transpose()));
        if asymmetry > Self::SYMMETRY_RTOL * linalg::max_abs(&w) {
            return Err(Error::NotSymmetric { asymmetry });
        }
        let sym = (&w + w.transpose()) * 0.5;
        let (vals, vecs) = linalg::sorted_eigen(&sym);
        let lmax = vals.iter().copied().fold(0.0_f64, f64::max);
        let floor = eig_floor * lmax;
        if vals[0] < -floor {
            return Err(Error::NotPsd {
                min_eig: vals[0],
                floor,
            });
        }
        let roots = vals.map(|v| v.max(0.0).sqrt());
        let sqrt = &vecs * DMatrix::from_diagonal(&roots) * vecs.transpose();
        let sqrt = (&sqrt + sqrt.transpose()) * 0.5;
        Ok(Self {
            kind: WeightKind::Dense(sym),
            sqrt,
            eig_floor,
        })
    }

    pub fn dim(&self) -> usize {
        self.sqrt.nrows()
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    pub fn eig_floor(&self) -> f64 {
        self.eig_floor
    }

    /// `W^{1/2}` as a dense symmetric matrix.
    pub fn sqrt(&self) -> &DMatrix<f64> {
        &self.sqrt
    }

    /// `W` as a dense matrix.
    pub fn matrix(&self) -> DMatrix<f64> {
        match &self.kind {
            WeightKind::Diagonal(d) => DMatrix::from_diagonal(d),
            WeightKind::Dense(w) => w.clone(),
        }
    }

    pub fn apply(&self, z: &DVector<f64>) -> DVector<f64> {
        match &self.kind {
            WeightKind::Diagonal(d) => d.component_mul(z),
            WeightKind::Dense(w) => w * z,
        }
    }

    pub fn apply_sqrt(&self, z: &DVector<f64>) -> DVector<f64> {
        match &self.kind {
            WeightKind::Diagonal(_) => self.sqrt.diagonal().component_mul(z),
            WeightKind::Dense(_) => &self.sqrt * z,
        }
    }

    /// `W^{1/2} X` for an `m x n` matrix.
    pub fn apply_sqrt_mat(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        match &self.kind {
            WeightKind::Diagonal(_) => {
                let d = self.sqrt.diagonal();
                let mut out = x.clone();
                for (i, mut row) in out.row_iter_mut().enumerate() {
                    row *= d[i];
                }
                out
            }
            WeightKind::Dense(_) => &self.sqrt * x,
        }
    }

    /// `‖z‖_W = ‖W^{1/2} z‖`.
    pub fn vec_seminorm(&self, z: &DVector<f64>) -> Result<f64> {
        if z.len() != self.dim() {
            return Err(Error::dim("seminorm vector", self.dim(), z.len()));
        }
        Ok(self.apply_sqrt(z).norm())
    }

    /// `‖X‖_{2,W} = ‖W^{1/2} X‖_F`.
    pub fn hs_seminorm(&self, x: &DMatrix<f64>) -> Result<f64> {
        if x.nrows() != self.dim() {
            return Err(Error::dim("seminorm matrix rows", self.dim(), x.nrows()));
        }
        Ok(self.apply_sqrt_mat(x).norm())
    }

    /// The weight `c W` for `c >= 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        match &self.kind {
            WeightKind::Diagonal(d) => Self::diagonal_with_floor(d * c, self.eig_floor),
            WeightKind::Dense(w) => Self::dense_with_floor(w * c, self.eig_floor),
        }
    }
}

pub(crate) fn check_finite<'a>(values: impl Iterator<Item = &'a f64>, field: &str) -> Result<()> {
    for (i, v) in values.enumerate() {
        if !v.is_finite() {
            return Err(Error::NonFinite {
                field: format!("{field}[{i}]"),
            });
        }
    }
    Ok(())
}
