//! Diagonal operators with finitely supported data.
//!
//! Split `x = (α, s)` into the first `N` coordinates (the support of `b`) and
//! the tail. Then `G(α, s) ≥ h(α, ‖s‖)` with
//!
//! ```text
//! h(α, σ) = Σ_{j≤N} w_j (a_j α_j − b_j)² / (1 + ‖α‖² + σ²) + ρ(‖α‖² + σ²)
//! ```
//!
//! and `h` is minimized at a point with `σ = 0` whenever every `w_j a_j`,
//! `j ≤ N`, is nonzero. When some `w_k a_k = 0`, moving the tail mass onto
//! coordinate `k` leaves `h` unchanged.

use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fractional::{solve_rtls, DinkelbachTrace, SolverOptions, DEFAULT_STARTS};
use crate::model::{ModelKind, Origin, PairReport, ProblemSpec, Regularizer, WeightOperator};
use crate::reduction::g_value;

/// Head data `a_j, w_j, b_j` for `j ≤ N`.
#[derive(Debug, Clone, Copy)]
pub struct DiagonalHead<'a> {
    pub a: &'a [f64],
    pub w: &'a [f64],
    pub b: &'a [f64],
    pub rho: f64,
}

impl DiagonalHead<'_> {
    pub fn h_value(&self, alpha: &[f64], s_norm: f64) -> f64 {
        let norm2 = alpha.iter().map(|v| v * v).sum::<f64>() + s_norm * s_norm;
        let fit: f64 = (0..self.b.len())
            .map(|j| self.w[j] * (self.a[j] * alpha[j] - self.b[j]).powi(2))
            .sum();
        fit / (1.0 + norm2) + self.rho * norm2
    }

    /// Indices `j ≤ N` with `w_j a_j = 0`.
    pub fn degenerate(&self) -> Vec<usize> {
        (0..self.b.len()).filter(|&j| self.w[j] * self.a[j] == 0.0).collect()
    }

    /// Collapse the tail and the degenerate head coordinates onto `k`.
    pub fn rebalance(&self, alpha: &[f64], s_norm: f64, k: usize) -> Vec<f64> {
        let c = self.degenerate();
        let mass = s_norm * s_norm + c.iter().map(|&j| alpha[j] * alpha[j]).sum::<f64>();
        let mut out = alpha.to_vec();
        for &j in &c {
            out[j] = 0.0;
        }
        out[k] = mass.sqrt();
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Rebalanced {
    pub k: usize,
    pub alpha_hat: Vec<f64>,
    pub h_original: f64,
    pub h_rebalanced: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalAudit {
    pub support: usize,
    /// Zero-based indices `j < N` with `w_j a_j = 0`.
    pub degenerate: Vec<usize>,
    pub tail_norm: f64,
    /// `‖s*‖² / ‖x*‖²`, zero when `x* = 0`.
    pub tail_fraction: f64,
    pub h_at_solution: f64,
    pub g_at_solution: f64,
    /// `max_{j ∈ D} w_j |a_j α_j − b_j|`; zero at critical points with `s ≠ 0`.
    pub active_fit_gap: f64,
    pub rebalanced: Option<Rebalanced>,
}

#[derive(Debug, Clone)]
pub struct DiagonalOutcome {
    pub report: PairReport,
    pub trace: Option<DinkelbachTrace>,
    pub audit: DiagonalAudit,
}

/// Solve the truncation of order `n` with `T = √ρ I`. `a` and `w` shorter
/// than `n` are continued by zeros; `b` is supported on its own length `N`.
pub fn diagonal_solve(a: &[f64], w: &[f64], b_head: &[f64], rho: f64, n: usize, opts: SolverOptions) -> Result<DiagonalOutcome> {
    let big_n = b_head.len();
    if big_n == 0 {
        return Err(Error::EmptyDimension("b"));
    }
    if n < big_n || a.len() < big_n || w.len() < big_n {
        return Err(Error::InvalidArgument(format!(
            "need n >= N and a, w of length >= N = {big_n}; got n = {n}, |a| = {}, |w| = {}",
            a.len(),
            w.len()
        )));
    }
    if a.len() > n || w.len() > n {
        return Err(Error::InvalidArgument("a and w must not exceed the truncation order".into()));
    }
    let pad = |v: &[f64]| DVector::from_fn(n, |i, _| v.get(i).copied().unwrap_or(0.0));
    let p = ProblemSpec::new(
        nalgebra::DMatrix::from_diagonal(&pad(a)),
        pad(b_head),
        WeightOperator::diagonal(pad(w))?,
        Regularizer::identity_scaled(rho)?,
    )?
    .with_origin(Origin {
        model_kind: ModelKind::Diagonal,
        truncation_order: n,
    });
    let out = solve_rtls(&p, opts, DEFAULT_STARTS, 0)?;
    let x = &out.report.x;
    let head = DiagonalHead {
        a: &a[..big_n],
        w: &w[..big_n],
        b: b_head,
        rho,
    };
    let alpha: Vec<f64> = x.rows(0, big_n).iter().copied().collect();
    let tail_norm = x.rows(big_n, n - big_n).norm();
    let x2 = x.norm_squared();
    let degenerate = head.degenerate();
    let h_at_solution = head.h_value(&alpha, tail_norm);
    let active_fit_gap = (0..big_n)
        .filter(|j| !degenerate.contains(j))
        .map(|j| head.w[j] * (head.a[j] * alpha[j] - head.b[j]).abs())
        .fold(0.0, f64::max);
    let rebalanced = degenerate.first().map(|&k| {
        let alpha_hat = head.rebalance(&alpha, tail_norm, k);
        Rebalanced {
            k,
            h_rebalanced: head.h_value(&alpha_hat, 0.0),
            h_original: h_at_solution,
            alpha_hat,
        }
    });
    let audit = DiagonalAudit {
        support: big_n,
        degenerate,
        tail_norm,
        tail_fraction: if x2 > 0.0 { tail_norm * tail_norm / x2 } else { 0.0 },
        h_at_solution,
        g_at_solution: g_value(&p, x),
        active_fit_gap,
        rebalanced,
    };
    Ok(DiagonalOutcome {
        report: out.report,
        trace: out.trace,
        audit,
    })
}
