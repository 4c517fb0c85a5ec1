//! Composite Simpson quadrature and the weak-continuity counterexample
//!
//! ```text
//! Iₙ = ∫₀^{2π} (2 + cos nt)(2 − cos nt) dt = 7π   for every n ≥ 1,
//! ```
//!
//! while the weak limits `2 + cos nt ⇀ 2` and `2 − cos nt ⇀ 2` give `8π`.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};

/// Nodes (offsets from the left endpoint) and weights of composite Simpson
/// on `[0, h]` with `intervals` (even) subintervals.
pub fn simpson_weights(h: f64, intervals: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if intervals == 0 || intervals % 2 == 1 {
        return Err(Error::InsufficientQuadrature(format!(
            "Simpson needs a positive even number of subintervals, got {intervals}"
        )));
    }
    let dx = h / intervals as f64;
    let nodes = (0..=intervals).map(|k| k as f64 * dx).collect();
    let weights = (0..=intervals)
        .map(|k| {
            let c = if k == 0 || k == intervals {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * dx / 3.0
        })
        .collect();
    Ok((nodes, weights))
}

/// Composite Simpson with `points` (odd, ≥ 3) equispaced nodes on `[a, b]`.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, points: usize) -> Result<f64> {
    if points < 3 || points.is_multiple_of(2) {
        return Err(Error::InsufficientQuadrature(format!(
            "Simpson needs an odd number of points >= 3, got {points}"
        )));
    }
    let (nodes, weights) = simpson_weights(b - a, points - 1)?;
    Ok(nodes.iter().zip(&weights).map(|(x, w)| w * f(a + x)).sum())
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakContinuityRow {
    pub n: u32,
    pub integral: f64,
    pub limit_value: f64,
    pub error_vs_7pi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WeakContinuityReport {
    pub quad_points: usize,
    pub rows: Vec<WeakContinuityRow>,
    pub limit_value: f64,
    pub limit_error: f64,
    /// `max |Iₙ − I₁|` over the rows.
    pub spread: f64,
    pub passed: bool,
}

pub const INTEGRAL_TOL: f64 = 1e-8;
pub const LIMIT_TOL: f64 = 1e-12;
pub const SPREAD_TOL: f64 = 1e-10;

pub fn weak_continuity_demo(n_list: &[u32], quad_points: usize) -> Result<WeakContinuityReport> {
    let n_max = *n_list
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidArgument("n list is empty".into()))?;
    if n_list.contains(&0) {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let need = 64 * n_max as usize + 1;
    if quad_points.is_multiple_of(2) || quad_points < need {
        return Err(Error::InsufficientQuadrature(format!(
            "need an odd point count >= 64 max(n) + 1 = {need}, got {quad_points}"
        )));
    }
    let limit_value = simpson(|_| 4.0, 0.0, TAU, quad_points)?;
    let rows: Vec<WeakContinuityRow> = n_list
        .iter()
        .map(|&n| {
            let k = n as f64;
            let integral = simpson(|t| (2.0 + (k * t).cos()) * (2.0 - (k * t).cos()), 0.0, TAU, quad_points)?;
            Ok(WeakContinuityRow {
                n,
                integral,
                limit_value,
                error_vs_7pi: (integral - 7.0 * PI).abs(),
            })
        })
        .collect::<Result<_>>()?;
    let first = rows[0].integral;
    let spread = rows.iter().map(|r| (r.integral - first).abs()).fold(0.0, f64::max);
    let limit_error = (limit_value - 8.0 * PI).abs();
    let passed = rows.iter().all(|r| r.error_vs_7pi <= INTEGRAL_TOL) && limit_error <= LIMIT_TOL && spread <= SPREAD_TOL;
    Ok(WeakContinuityReport {
        quad_points,
        rows,
        limit_value,
        limit_error,
        spread,
        passed,
    })
}
