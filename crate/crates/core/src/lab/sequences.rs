//! Minimizing sequences along which the objective tends to zero while no
//! minimizer exists.
//!
//! Given a unit `x` on which the relevant operator is small, the pair
//! `X₀ = A + (εb − Ax) xᵀ`, `x/ε` interpolates exactly (`X₀ x/ε = b`) and its
//! objective is `O(ε²)`.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional::ser_vec;
use crate::model::{is_trivial_rtls, is_trivial_tls, ProblemSpec};
use crate::spectral::min_direction;

const TRIVIAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct SequencePoint {
    pub eps: f64,
    #[serde(serialize_with = "ser_vec")]
    pub x_scaled: DVector<f64>,
    pub objective: f64,
    pub bound: f64,
    /// `‖X₀ (x/ε) − b‖ / (1 + ‖b‖)`.
    pub interpolation_residual: f64,
}

impl SequencePoint {
    pub fn within_bound(&self) -> bool {
        self.objective <= self.bound * (1.0 + 1e-8)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedEps {
    pub eps: f64,
    /// The smallest available value of the operator on unit vectors.
    pub direction_value: f64,
    pub required_below: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub points: Vec<SequencePoint>,
    pub skipped: Vec<SkippedEps>,
    /// Distance from `W^{1/2} b` to the admissible range; positive means nontrivial.
    pub triviality_residual: f64,
    pub direction_value: f64,
    /// Both proof inequalities `‖Tx‖, ‖W^{1/2}Ax‖ ≤ ‖(T*T + A*WA)^{1/2} x‖`
    /// (always true for the unregularized sequence).
    pub chain_holds: bool,
}

fn construct(p: &ProblemSpec, x: &DVector<f64>, eps: f64) -> (DMatrix<f64>, DVector<f64>, f64) {
    let x_op = p.a() + (p.b() * eps - p.a() * x) * x.transpose();
    let x_scaled = x / eps;
    let resid = (&x_op * &x_scaled - p.b()).norm() / (1.0 + p.b().norm());
    (x_op, x_scaled, resid)
}

fn check_eps(eps_list: &[f64]) -> Result<()> {
    if eps_list.is_empty() {
        return Err(Error::InvalidArgument("eps list is empty".into()));
    }
    match eps_list.iter().find(|e| !(**e > 0.0) || !e.is_finite()) {
        Some(e) => Err(Error::InvalidArgument(format!("eps must be positive and finite, got {e}"))),
        None => Ok(()),
    }
}

/// Sequence for the weighted TLS problem; needs `‖W^{1/2} A x‖ < ε` for some unit `x`.
pub fn nonexistence_tls_sequence(p: &ProblemSpec, eps_list: &[f64]) -> Result<SequenceReport> {
    check_eps(eps_list)?;
    let triv = is_trivial_tls(p, TRIVIAL_TOL)?;
    if triv.trivial {
        return Err(Error::TrivialInstance);
    }
    let dir = min_direction(&p.normal_matrix())?;
    let wb = p.w().apply_sqrt(p.b()).norm();
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &eps in eps_list {
        if dir.value >= eps {
            skipped.push(SkippedEps {
                eps,
                direction_value: dir.value,
                required_below: eps,
            });
            continue;
        }
        let (x_op, x_scaled, interpolation_residual) = construct(p, &dir.x, eps);
        points.push(SequencePoint {
            eps,
            objective: p.objective_tls(&x_op, &x_scaled)?,
            bound: eps * eps * (wb + 1.0).powi(2),
            x_scaled,
            interpolation_residual,
        });
    }
    finish(points, skipped, triv.residual, dir.value, true)
}

/// Sequence for the regularized problem; needs `‖(T*T + A*WA)^{1/2} x‖ < ε²`.
pub fn nonexistence_rtls_sequence(p: &ProblemSpec, eps_list: &[f64]) -> Result<SequenceReport> {
    check_eps(eps_list)?;
    let triv = is_trivial_rtls(p, TRIVIAL_TOL)?;
    if triv.trivial {
        return Err(Error::TrivialInstance);
    }
    let m = p.t().gram(p.n()) + p.normal_matrix();
    let dir = min_direction(&m)?;
    let wb = p.w().apply_sqrt(p.b()).norm();
    let slack = 1e-12 * (1.0 + dir.value);
    let chain_holds = p.t().apply(&dir.x).norm() <= dir.value + slack
        && p.w().apply_sqrt(&(p.a() * &dir.x)).norm() <= dir.value + slack;
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for &eps in eps_list {
        let e2 = eps * eps;
        if dir.value >= e2 {
            skipped.push(SkippedEps {
                eps,
                direction_value: dir.value,
                required_below: e2,
            });
            continue;
        }
        let (x_op, x_scaled, interpolation_residual) = construct(p, &dir.x, eps);
        points.push(SequencePoint {
            eps,
            objective: p.objective_rtls(&x_op, &x_scaled)?,
            bound: e2 * (1.0 + (wb + e2).powi(2)),
            x_scaled,
            interpolation_residual,
        });
    }
    finish(points, skipped, triv.residual, dir.value, chain_holds)
}

fn finish(
    points: Vec<SequencePoint>,
    skipped: Vec<SkippedEps>,
    triviality_residual: f64,
    direction_value: f64,
    chain_holds: bool,
) -> Result<SequenceReport> {
    if points.is_empty() {
        return Err(Error::ConstructionUnavailable { value: direction_value });
    }
    for s in &skipped {
        log::info!(
            "eps = {:e} skipped: smallest direction value {:e} is not below {:e}",
            s.eps,
            s.direction_value,
            s.required_below
        );
    }
    Ok(SequenceReport {
        points,
        skipped,
        triviality_residual,
        direction_value,
        chain_holds,
    })
}
