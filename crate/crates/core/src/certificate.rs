//! Semidefinite characterization of `t* = inf G` for `T = √ρ I`.
//!
//! `t ≤ t*` exactly when some `(α, β)` makes the symmetric operator `C(t, α, β)`
//! on `ℝⁿ × ℝ³` (coordinates `x, z₁, z₂, τ`) positive semidefinite, where
//!
//! ```text
//! ⟨C y, y⟩ = z₁ + ρz₂² + (ρ − t)z₂ − t + α(‖Ax − b‖²_W − z₁) + β(‖x‖² − z₂)
//! ```
//!
//! for `y = (x, z₁, z₂, 1)`. Both multipliers may be taken nonnegative.
//! Because `C[z₁, z₁] = 0`, semidefiniteness forces `α = 1`; the search still
//! covers a box in `α` so that the reported `λ_min` is the best available.
//! At `t = t*` the feasible `β` is the trust-region multiplier
//! `2ρ‖x*‖² + ρ − t*` of the inner problem.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg;
use crate::model::ProblemSpec;

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
    pub lambda_min: f64,
    pub tol_psd: f64,
    pub feasible: bool,
    #[serde(rename = "C", skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_matrix")]
    pub c: Option<DMatrix<f64>>,
}

fn ser_opt_matrix<S: serde::Serializer>(m: &Option<DMatrix<f64>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match m {
        Some(m) => {
            let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
            rows.serialize(s)
        }
        None => s.serialize_none(),
    }
}

/// Search domain for `(α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchBox {
    pub alpha_max: f64,
    pub beta_max: f64,
}

impl SearchBox {
    /// `α_max = β_max = 10 max(1, ρ, ‖b‖²_W, ‖A*WA‖)`.
    pub fn default_for(p: &ProblemSpec) -> Result<Self> {
        let rho = rho_of(p)?;
        let (eig, _) = linalg::sorted_eigen(&p.normal_matrix());
        let s_max = eig.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        Ok(Self::square(10.0 * 1.0_f64.max(rho).max(p.b_weighted_sq()).max(s_max)))
    }

    pub fn square(scale: f64) -> Self {
        Self {
            alpha_max: scale,
            beta_max: scale,
        }
    }

    pub fn doubled(self) -> Self {
        Self::square(2.0 * self.alpha_max.max(self.beta_max))
    }
}

fn rho_of(p: &ProblemSpec) -> Result<f64> {
    p.t().rho().ok_or(Error::RequiresIdentityRegularizer)
}

/// Precomputed blocks shared by every `C(t, α, β)` on one problem.
struct Blocks {
    s: DMatrix<f64>,
    c: DVector<f64>,
    b_sq: f64,
    rho: f64,
}

impl Blocks {
    fn new(p: &ProblemSpec) -> Result<Self> {
        Ok(Self {
            s: p.normal_matrix(),
            c: p.normal_rhs(),
            b_sq: p.b_weighted_sq(),
            rho: rho_of(p)?,
        })
    }

    fn assemble(&self, t: f64, alpha: f64, beta: f64) -> DMatrix<f64> {
        let n = self.s.nrows();
        let (z1, z2, tau) = (n, n + 1, n + 2);
        let mut m = DMatrix::zeros(n + 3, n + 3);
        let mut xb = &self.s * alpha;
        for i in 0..n {
            xb[(i, i)] += beta;
        }
        m.view_mut((0, 0), (n, n)).copy_from(&xb);
        for i in 0..n {
            let v = -alpha * self.c[i];
            m[(i, tau)] = v;
            m[(tau, i)] = v;
        }
        let v = 0.5 * (1.0 - alpha);
        m[(z1, tau)] = v;
        m[(tau, z1)] = v;
        m[(z2, z2)] = self.rho;
        let v = 0.5 * (self.rho - t - beta);
        m[(z2, tau)] = v;
        m[(tau, z2)] = v;
        m[(tau, tau)] = alpha * self.b_sq - t;
        m
    }

    fn lambda_min(&self, t: f64, alpha: f64, beta: f64) -> f64 {
        linalg::lambda_min(&self.assemble(t, alpha, beta))
    }
}

pub fn tol_psd(c: &DMatrix<f64>) -> f64 {
    1e-9 * (1.0 + c.norm())
}

/// Assemble `C(t, α, β)`; negative multipliers are rejected.
pub fn assemble_c(p: &ProblemSpec, t: f64, alpha: f64, beta: f64) -> Result<DMatrix<f64>> {
    for (name, v) in [("t", t), ("alpha", alpha), ("beta", beta)] {
        if !v.is_finite() {
            return Err(Error::NonFinite { field: name.into() });
        }
    }
    if alpha < 0.0 || beta < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "multipliers must be nonnegative, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(Blocks::new(p)?.assemble(t, alpha, beta))
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of a unimodal function on `[a, b]`.
fn golden_max(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, iters: usize) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iters {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

const INNER_ITERS: usize = 110;
const OUTER_ITERS: usize = 70;

fn best_beta(blocks: &Blocks, t: f64, alpha: f64, bx: &SearchBox) -> (f64, f64) {
    let (beta, lam) = golden_max(|beta| blocks.lambda_min(t, alpha, beta), 0.0, bx.beta_max, INNER_ITERS);
    // The endpoints are not sampled by golden section.
    [0.0, bx.beta_max]
        .into_iter()
        .map(|b| (b, blocks.lambda_min(t, alpha, b)))
        .fold((beta, lam), |best, cand| if cand.1 > best.1 { cand } else { best })
}

fn search(blocks: &Blocks, t: f64, bx: &SearchBox, keep_c: bool, refine_alpha: bool) -> Certificate {
    let finish = |alpha: f64, beta: f64, lambda_min: f64| {
        let c = blocks.assemble(t, alpha, beta);
        let tol = tol_psd(&c);
        Certificate {
            t,
            alpha,
            beta,
            lambda_min,
            tol_psd: tol,
            feasible: lambda_min >= -tol,
            c: keep_c.then_some(c),
        }
    };

    let alpha1 = 1.0_f64.min(bx.alpha_max);
    let (beta1, lam1) = best_beta(blocks, t, alpha1, bx);
    let warm = finish(alpha1, beta1, lam1);
    if warm.feasible || !refine_alpha {
        return warm;
    }
    let (alpha, lam) = golden_max(|a| best_beta(blocks, t, a, bx).1, 0.0, bx.alpha_max, OUTER_ITERS);
    if lam > lam1 {
        let (beta, lam) = best_beta(blocks, t, alpha, bx);
        finish(alpha, beta, lam)
    } else {
        warm
    }
}

/// Maximize `λ_min(C(t, α, β))` over the box; feasible iff the best value is
/// at least `−tol_psd`.
pub fn feasible_at_t(p: &ProblemSpec, t: f64, bx: &SearchBox) -> Result<(bool, Certificate)> {
    if !(bx.alpha_max > 0.0) || !(bx.beta_max > 0.0) {
        return Err(Error::InvalidArgument(format!("degenerate search box {bx:?}")));
    }
    let blocks = Blocks::new(p)?;
    let cert = search(&blocks, t, bx, false, true);
    Ok((cert.feasible, cert))
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CertifyOptions {
    /// `None` selects `1e-8 (1 + ‖b‖²_W)`.
    pub tol_t: Option<f64>,
    /// Upper bound for `α` and `β`; `None` selects [`SearchBox::default_for`].
    pub box_scale: Option<f64>,
    pub keep_c: bool,
}

const MAX_BOX_DOUBLINGS: usize = 3;

/// Largest feasible `t` in `[0, ‖b‖²_W]` by bisection.
///
/// Only `α = 1` is probed here: for `α ≠ 1` the zero diagonal entry at `z₁`
/// with the nonzero coupling `(1 − α)/2` rules out semidefiniteness, so the
/// outer `α` search could change the reported `λ_min` but never the verdict.
pub fn certify_tstar(p: &ProblemSpec, opts: CertifyOptions) -> Result<Certificate> {
    let blocks = Blocks::new(p)?;
    let hi_t = blocks.b_sq;
    let tol_t = opts.tol_t.unwrap_or(1e-8 * (1.0 + hi_t));
    if !(tol_t > 0.0) {
        return Err(Error::InvalidArgument(format!("tol_t must be positive, got {tol_t}")));
    }
    let mut bx = match opts.box_scale {
        Some(s) if s > 0.0 && s.is_finite() => SearchBox::square(s),
        Some(s) => return Err(Error::InvalidArgument(format!("search box must be positive, got {s}"))),
        None => SearchBox::default_for(p)?,
    };

    for doubling in 0..=MAX_BOX_DOUBLINGS {
        let at_zero = search(&blocks, 0.0, &bx, opts.keep_c, false);
        if !at_zero.feasible {
            log::debug!("t = 0 infeasible in box {bx:?} (doubling {doubling})");
            bx = bx.doubled();
            continue;
        }
        let top = search(&blocks, hi_t, &bx, opts.keep_c, false);
        if top.feasible {
            return Ok(top);
        }
        let (mut lo, mut hi) = (0.0, hi_t);
        let mut best = at_zero;
        while hi - lo > tol_t {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let cert = search(&blocks, mid, &bx, opts.keep_c, false);
            if cert.feasible {
                lo = mid;
                best = cert;
            } else {
                hi = mid;
            }
        }
        return Ok(best);
    }
    Err(Error::SearchBoxExhausted {
        doublings: MAX_BOX_DOUBLINGS,
    })
}

/// `|t_certified − t*| ≤ max(tol_t, 1e-4 (1 + t*))`.
pub fn agreement_holds(t_certified: f64, t_star: f64, tol_t: f64) -> bool {
    (t_certified - t_star).abs() <= tol_t.max(1e-4 * (1.0 + t_star.abs()))
}
