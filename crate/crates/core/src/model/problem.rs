use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::weight::{check_finite, WeightOperator};
use crate::error::{Error, Result};

/// The Tikhonov regularizer `T`.
#[derive(Debug, Clone, PartialEq)]
pub enum Regularizer {
    /// `T = sqrt(rho) I`; `rho` is the squared scale and must be positive.
    IdentityScaled { rho: f64 },
    /// An arbitrary `p x n` matrix.
    Dense(DMatrix<f64>),
}

impl Regularizer {
    pub fn identity_scaled(rho: f64) -> Result<Self> {
        if !rho.is_finite() {
            return Err(Error::NonFinite {
                field: "T.rho".into(),
            });
        }
        if rho <= 0.0 {
            return Err(Error::InvalidRegularizer(format!(
                "rho must be positive, got {rho}"
            )));
        }
        Ok(Regularizer::IdentityScaled { rho })
    }

    pub fn rho(&self) -> Option<f64> {
        match self {
            Regularizer::IdentityScaled { rho } => Some(*rho),
            Regularizer::Dense(_) => None,
        }
    }

    pub fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            Regularizer::IdentityScaled { rho } => x * rho.sqrt(),
            Regularizer::Dense(t) => t * x,
        }
    }

    /// `‖T x‖²`.
    pub fn norm_sq(&self, x: &DVector<f64>) -> f64 {
        match self {
            Regularizer::IdentityScaled { rho } => rho * x.norm_squared(),
            Regularizer::Dense(t) => (t * x).norm_squared(),
        }
    }

    /// `T* T x`.
    pub fn gram_apply(&self, x: &DVector<f64>) -> DVector<f64> {
        match self {
            Regularizer::IdentityScaled { rho } => x * *rho,
            Regularizer::Dense(t) => t.transpose() * (t * x),
        }
    }

    /// `T* T` as an `n x n` matrix.
    pub fn gram(&self, n: usize) -> DMatrix<f64> {
        match self {
            Regularizer::IdentityScaled { rho } => DMatrix::identity(n, n) * *rho,
            Regularizer::Dense(t) => t.transpose() * t,
        }
    }

    /// `T` as a dense `p x n` matrix.
    pub fn to_dense(&self, n: usize) -> DMatrix<f64> {
        match self {
            Regularizer::IdentityScaled { rho } => DMatrix::identity(n, n) * rho.sqrt(),
            Regularizer::Dense(t) => t.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Diagonal,
    Integral,
    Dense,
}

/// Which infinite-dimensional model a finite instance truncates, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Origin {
    pub model_kind: ModelKind,
    pub truncation_order: usize,
}

/// A finite-dimensional instance `(A, b, W, T)`.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    a: DMatrix<f64>,
    b: DVector<f64>,
    w: WeightOperator,
    t: Regularizer,
    origin: Option<Origin>,
}

impl ProblemSpec {
    pub fn new(
        a: DMatrix<f64>,
        b: DVector<f64>,
        w: WeightOperator,
        t: Regularizer,
    ) -> Result<Self> {
        let (m, n) = a.shape();
        if m == 0 {
            return Err(Error::EmptyDimension("A rows"));
        }
        if n == 0 {
            return Err(Error::EmptyDimension("A cols"));
        }
        if b.len() != m {
            return Err(Error::dim("b", m, b.len()));
        }
        if w.dim() != m {
            return Err(Error::dim("W", m, w.dim()));
        }
        check_finite(a.transpose().iter(), "A.data")?;
        check_finite(b.iter(), "b")?;
        match &t {
            Regularizer::IdentityScaled { rho } => {
                Regularizer::identity_scaled(*rho)?;
            }
            Regularizer::Dense(tm) => {
                if tm.ncols() != n {
                    return Err(Error::dim("T cols", n, tm.ncols()));
                }
                if tm.nrows() == 0 {
                    return Err(Error::EmptyDimension("T rows"));
                }
                check_finite(tm.transpose().iter(), "T.data")?;
            }
        }
        Ok(Self {
            a,
            b,
            w,
            t,
            origin: None,
        })
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn w(&self) -> &WeightOperator {
        &self.w
    }

    pub fn t(&self) -> &Regularizer {
        &self.t
    }

    pub fn origin(&self) -> Option<Origin> {
        self.origin
    }

    /// Number of rows of `A` (dimension of the data space).
    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    /// Number of columns of `A` (dimension of the unknown).
    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    /// Copy of this problem with a different regularizer.
    pub fn with_regularizer(&self, t: Regularizer) -> Result<Self> {
        let p = Self::new(self.a.clone(), self.b.clone(), self.w.clone(), t)?;
        Ok(match self.origin {
            Some(o) => p.with_origin(o),
            None => p,
        })
    }

    /// Copy of this problem with a different weight.
    pub fn with_weight(&self, w: WeightOperator) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), w, self.t.clone())
    }

    /// `‖b‖²_W`, the value of `G` at the origin.
    pub fn b_weighted_sq(&self) -> f64 {
        self.w.apply_sqrt(&self.b).norm_squared()
    }

    /// `W^{1/2} A`.
    pub fn weighted_a(&self) -> DMatrix<f64> {
        self.w.apply_sqrt_mat(&self.a)
    }

    /// `A* W A`, formed as `(W^{1/2}A)*(W^{1/2}A)` so it is PSD by construction.
    pub fn normal_matrix(&self) -> DMatrix<f64> {
        let wa = self.weighted_a();
        let s = wa.transpose() * &wa;
        (&s + s.transpose()) * 0.5
    }

    /// `A* W b`.
    pub fn normal_rhs(&self) -> DVector<f64> {
        self.weighted_a().transpose() * self.w.apply_sqrt(&self.b)
    }

    pub(crate) fn check_x(&self, x: &DVector<f64>) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::dim("x", self.n(), x.len()));
        }
        Ok(())
    }

    pub(crate) fn check_op(&self, x_op: &DMatrix<f64>) -> Result<()> {
        if x_op.nrows() != self.m() {
            return Err(Error::dim("X rows", self.m(), x_op.nrows()));
        }
        if x_op.ncols() != self.n() {
            return Err(Error::dim("X cols", self.n(), x_op.ncols()));
        }
        Ok(())
    }

    /// `‖A − X‖²_{2,W} + ‖Xx − b‖²_W`.
    pub fn objective_tls(&self, x_op: &DMatrix<f64>, x: &DVector<f64>) -> Result<f64> {
        self.check_op(x_op)?;
        self.check_x(x)?;
        let op_term = self.w.hs_seminorm(&(&self.a - x_op))?.powi(2);
        let fit_term = self.w.vec_seminorm(&(x_op * x - &self.b))?.powi(2);
        Ok(op_term + fit_term)
    }

    /// `‖Tx‖² + ‖A − X‖²_{2,W} + ‖Xx − b‖²_W`.
    pub fn objective_rtls(&self, x_op: &DMatrix<f64>, x: &DVector<f64>) -> Result<f64> {
        Ok(self.t.norm_sq(x) + self.objective_tls(x_op, x)?)
    }
}
