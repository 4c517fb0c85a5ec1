//! Reduction of the regularized problem to the one-variable function
//!
//! ```text
//! G(x) = ‖Ax − b‖²_W / (1 + ‖x‖²) + ‖Tx‖²
//! ```
//!
//! For every `x` the operator `A_x = A + ⟨·, x⟩ (b − Ax)/(1 + ‖x‖²)` minimizes
//! `X ↦ ‖Tx‖² + ‖A − X‖²_{2,W} + ‖Xx − b‖²_W`, and the minimum equals `G(x)`.
//! A pair `(A₀, x₀)` solves the regularized problem exactly when `x₀` minimizes `G`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::Result;
use crate::model::{PairReport, PairStatus, ProblemSpec, RankOneLift};

#[derive(Debug, Clone, Serialize)]
pub struct GValue {
    pub x: Vec<f64>,
    pub g: f64,
    /// `‖Ax − b‖²_W / (1 + ‖x‖²)`.
    pub data_term: f64,
    /// `‖Tx‖²`.
    pub reg_term: f64,
}

pub fn eval_g(p: &ProblemSpec, x: &DVector<f64>) -> Result<GValue> {
    p.check_x(x)?;
    let residual = p.a() * x - p.b();
    let data_term = p.w().apply_sqrt(&residual).norm_squared() / (1.0 + x.norm_squared());
    let reg_term = p.t().norm_sq(x);
    Ok(GValue {
        x: x.iter().copied().collect(),
        g: data_term + reg_term,
        data_term,
        reg_term,
    })
}

/// Value of `G` only; used in the inner loops of the solvers.
pub(crate) fn g_value(p: &ProblemSpec, x: &DVector<f64>) -> f64 {
    let residual = p.a() * x - p.b();
    p.w().apply_sqrt(&residual).norm_squared() / (1.0 + x.norm_squared()) + p.t().norm_sq(x)
}

/// The optimal rank-one lift `A_x`.
pub fn lift_operator(p: &ProblemSpec, x: &DVector<f64>) -> Result<RankOneLift> {
    p.check_x(x)?;
    let correction = (p.b() - p.a() * x) / (1.0 + x.norm_squared());
    Ok(RankOneLift {
        x: x.clone(),
        correction,
    })
}

/// Scale used to normalize operator-level residuals:
/// `1 + ‖W‖_F ‖A‖_F + ‖W^{1/2} b‖²`.
pub fn operator_scale(p: &ProblemSpec) -> f64 {
    1.0 + p.w().matrix().norm() * p.a().norm() + p.b_weighted_sq()
}

/// `‖W(X − A) + W(Xx − b) xᵀ‖_F`, normalized by [`operator_scale`].
///
/// Zero exactly when `X` satisfies the first-order condition of
/// `X ↦ F_x(X)`; for `X = A₀` and a solution `x₀` this is the statement that
/// `W A₀` is the rank-one perturbation `W A − ⟨·, x₀⟩ W (A₀ x₀ − b)` of `W A`.
pub fn stationarity_residual(p: &ProblemSpec, x_op: &DMatrix<f64>, x: &DVector<f64>) -> Result<f64> {
    p.check_op(x_op)?;
    p.check_x(x)?;
    let wm = p.w().matrix();
    let fit = x_op * x - p.b();
    let r = &wm * (x_op - p.a()) + (&wm * fit) * x.transpose();
    Ok(r.norm() / operator_scale(p))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct LiftIdentities {
    /// `(1 + ‖x‖²)² ‖A_x x − b‖²_W`.
    pub data_lhs: f64,
    /// `‖Ax − b‖²_W`.
    pub data_rhs: f64,
    pub data_gap: f64,
    /// `‖A − A_x‖²_{2,W}`.
    pub op_lhs: f64,
    /// `‖x‖² ‖A_x x − b‖²_W`.
    pub op_rhs: f64,
    pub op_gap: f64,
    /// `max_i |(A_x x − b)_i − (Ax − b)_i / (1 + ‖x‖²)|`, scaled by `1 + max_i |(Ax − b)_i|`.
    pub vector_gap: f64,
}

impl LiftIdentities {
    pub fn max_gap(&self) -> f64 {
        self.data_gap.max(self.op_gap).max(self.vector_gap)
    }
}

/// Evaluates both sides of the lift identities on the materialized `A_x`.
pub fn verify_lift_identities(p: &ProblemSpec, x: &DVector<f64>) -> Result<LiftIdentities> {
    let lift = lift_operator(p, x)?;
    let ax = lift.materialize(p.a());
    let w = p.w();
    let nx2 = x.norm_squared();

    let lifted_fit = &ax * x - p.b();
    let fit = p.a() * x - p.b();
    let lifted_fit_w = w.vec_seminorm(&lifted_fit)?.powi(2);

    let data_lhs = (1.0 + nx2).powi(2) * lifted_fit_w;
    let data_rhs = w.vec_seminorm(&fit)?.powi(2);
    let op_lhs = w.hs_seminorm(&(p.a() - &ax))?.powi(2);
    let op_rhs = nx2 * lifted_fit_w;

    let expected = &fit / (1.0 + nx2);
    let vector_gap = (&lifted_fit - &expected).amax() / (1.0 + fit.amax());

    Ok(LiftIdentities {
        data_lhs,
        data_rhs,
        data_gap: rel_gap(data_lhs, data_rhs),
        op_lhs,
        op_rhs,
        op_gap: rel_gap(op_lhs, op_rhs),
        vector_gap,
    })
}

/// Relative gap `|l − r| / max(|l|, |r|)`, zero when both vanish.
pub fn rel_gap(l: f64, r: f64) -> f64 {
    let scale = l.abs().max(r.abs());
    if scale == 0.0 {
        0.0
    } else {
        (l - r).abs() / scale
    }
}

/// Residual of the necessary condition
///
/// ```text
/// (1 + ‖x‖²) T*T x + A*W(Ax − b) = (‖Ax − b‖²_W / (1 + ‖x‖²)) x
/// ```
///
/// divided by `1 + ‖x‖ + ‖A*Wb‖`.
pub fn normal_residual(p: &ProblemSpec, x: &DVector<f64>) -> Result<f64> {
    p.check_x(x)?;
    let nx2 = x.norm_squared();
    let fit = p.a() * x - p.b();
    let wfit = p.w().apply(&fit);
    let fit_w = p.w().apply_sqrt(&fit).norm_squared();
    let lhs = p.t().gram_apply(x) * (1.0 + nx2) + p.a().transpose() * wfit;
    let rhs = x * (fit_w / (1.0 + nx2));
    Ok((lhs - rhs).norm() / (1.0 + x.norm() + p.normal_rhs().norm()))
}

/// Bundles `x`, its lift, `G(x)` and the first-order residuals.
///
/// The status is [`PairStatus::Heuristic`]; solvers overwrite it when they can
/// certify the pair.
pub fn recover_pair(p: &ProblemSpec, x: &DVector<f64>) -> Result<PairReport> {
    let g = eval_g(p, x)?;
    let lift = lift_operator(p, x)?;
    let a0 = lift.materialize(p.a());
    let residual_rank_one = stationarity_residual(p, &a0, x)?;
    let adjoint = a0.transpose() * p.w().matrix() * (&a0 - p.a());
    Ok(PairReport {
        x: x.clone(),
        lift,
        objective: g.g,
        data_term: g.data_term,
        reg_term: g.reg_term,
        residual_normal_eq: normal_residual(p, x)?,
        residual_rank_one,
        residual_adjoint: adjoint.norm() / operator_scale(p),
        status: PairStatus::Heuristic,
    })
}
