//! Multi-start descent on `G` for a general dense regularizer.
//!
//! No global guarantee: the result is always labelled heuristic.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::linalg::{self, RANK_RTOL};
use crate::model::{PairReport, PairStatus, ProblemSpec};
use crate::reduction::{g_value, recover_pair};

const MAX_STEPS: usize = 20_000;
const ARMIJO_C: f64 = 1e-4;

/// `∇G(x) = [2A*W(Ax − b)(1 + ‖x‖²) − 2‖Ax − b‖²_W x] / (1 + ‖x‖²)² + 2T*Tx`.
pub fn g_gradient(p: &ProblemSpec, x: &DVector<f64>) -> Result<DVector<f64>> {
    p.check_x(x)?;
    Ok(gradient(p, x))
}

fn gradient(p: &ProblemSpec, x: &DVector<f64>) -> DVector<f64> {
    let q = 1.0 + x.norm_squared();
    let fit = p.a() * x - p.b();
    let fit_w = p.w().apply_sqrt(&fit).norm_squared();
    let grad_fit = p.a().transpose() * p.w().apply(&fit);
    (grad_fit * (2.0 * q) - x * (2.0 * fit_w)) / (q * q) + p.t().gram_apply(x) * 2.0
}

/// Descent with Barzilai–Borwein trial steps and Armijo backtracking.
fn descend(p: &ProblemSpec, mut x: DVector<f64>) -> (DVector<f64>, f64) {
    let mut g = g_value(p, &x);
    let mut grad = gradient(p, &x);
    let mut step = 1.0 / (1.0 + grad.norm());
    for _ in 0..MAX_STEPS {
        let gn2 = grad.norm_squared();
        if gn2.sqrt() <= 1e-13 * (1.0 + g.abs()) {
            break;
        }
        let mut alpha = step.clamp(1e-12, 1e6);
        let mut accepted = None;
        while alpha > 1e-20 {
            let cand = &x - &grad * alpha;
            let gc = g_value(p, &cand);
            if gc <= g - ARMIJO_C * alpha * gn2 {
                accepted = Some((cand, gc));
                break;
            }
            alpha *= 0.5;
        }
        let Some((x_new, g_new)) = accepted else { break };
        let grad_new = gradient(p, &x_new);
        let s = &x_new - &x;
        let y = &grad_new - &grad;
        let sy = s.dot(&y);
        step = if sy > 0.0 { s.norm_squared() / sy } else { 2.0 * alpha };
        x = x_new;
        grad = grad_new;
        g = g_new;
    }
    (x, g)
}

/// Best of `starts` descents from `0`, the Tikhonov solution and seeded Gaussian points.
pub fn solve_rtls_general_t(p: &ProblemSpec, starts: usize, seed: u64) -> Result<PairReport> {
    let n = p.n();
    let mut initial = vec![DVector::zeros(n)];
    // (A*WA + T*T) x = A*Wb via the stacked least-squares system.
    let stacked = {
        let wa = p.weighted_a();
        let t = p.t().to_dense(n);
        let mut m = DMatrix::zeros(wa.nrows() + t.nrows(), n);
        m.rows_mut(0, wa.nrows()).copy_from(&wa);
        m.rows_mut(wa.nrows(), t.nrows()).copy_from(&t);
        let mut rhs = DVector::zeros(wa.nrows() + t.nrows());
        rhs.rows_mut(0, wa.nrows()).copy_from(&p.w().apply_sqrt(p.b()));
        linalg::lstsq(&m, &rhs, RANK_RTOL)
    };
    let scale = 1.0 + stacked.norm();
    initial.push(stacked);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while initial.len() < starts.max(1) {
        let z: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        initial.push(DVector::from_vec(z) * scale);
    }
    initial.truncate(starts.max(1));

    let mut best: Option<(DVector<f64>, f64)> = None;
    for x0 in initial {
        let (x, g) = descend(p, x0);
        if best.as_ref().is_none_or(|(_, bg)| g < *bg) {
            best = Some((x, g));
        }
    }
    let (x, _) = best.expect("at least one start");
    let mut report = recover_pair(p, &x)?;
    report.status = PairStatus::Heuristic;
    Ok(report)
}
