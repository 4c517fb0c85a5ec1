//! Dinkelbach iteration on `G` for `T = √ρ I`.
//!
//! With `t` fixed, `φ(t) = min_x ‖Ax − b‖²_W + ρ‖x‖⁴ + (ρ − t)‖x‖² − t`, which
//! equals `min_x (1 + ‖x‖²)(G(x) − t)`. `φ` is decreasing with the single root
//! `t* = inf G`, and the inner minimizer at `t*` minimizes `G`.

use nalgebra::DVector;
use serde::Serialize;

use super::radial::{RadialPoly, RadialSearch};
use super::trs::TrsSystem;
use crate::error::{Error, Result};
use crate::model::{is_trivial_rtls, ProblemSpec};
use crate::reduction::g_value;

pub const DEFAULT_GRID: usize = 512;
pub const DEFAULT_MAX_ITER: usize = 100;
/// Non-improving Dinkelbach steps tolerated before switching to bisection.
const STALL_LIMIT: usize = 3;

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// `None` selects `1e-9 (1 + ‖b‖²_W)`.
    pub tol_phi: Option<f64>,
    pub grid: usize,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol_phi: None,
            grid: DEFAULT_GRID,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PhiValue {
    pub t: f64,
    pub phi: f64,
    pub r: f64,
    pub x: DVector<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DinkelbachIterate {
    pub t: f64,
    pub r: f64,
    pub x: Vec<f64>,
    pub phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    MaxIter,
    /// Converged, but `t* > ρ`: the inner problem at `t*` is not convex in `x`.
    NonconvexInnerFlagged,
}

impl Verdict {
    pub fn is_converged(self) -> bool {
        !matches!(self, Verdict::MaxIter)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DinkelbachTrace {
    pub iterates: Vec<DinkelbachIterate>,
    pub t_star: f64,
    #[serde(serialize_with = "ser_vec")]
    pub x_star: DVector<f64>,
    pub verdict: Verdict,
    pub tol_phi: f64,
}

pub(crate) fn ser_vec<S: serde::Serializer>(v: &DVector<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Existence {
    /// `ρ ≥ t*`: a unique solution exists.
    UniqueSolution,
    /// `b ∈ A(N(T)) + N(W)`.
    Trivial,
    /// `ρ < t*`: the minimizer found is reported but attainment is not certified.
    Uncertified,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuarticSolution {
    pub a_star: f64,
    #[serde(serialize_with = "ser_vec")]
    pub x: DVector<f64>,
    /// `a* ≤ ρ`, which certifies a unique solution of the regularized problem.
    pub certifies_unique: bool,
}

/// Shared state for all `φ` evaluations on one problem: the eigendecomposition
/// of `A*WA` is computed once.
pub struct FractionalSolver<'a> {
    p: &'a ProblemSpec,
    rho: f64,
    b_sq: f64,
    system: TrsSystem,
    opts: SolverOptions,
}

impl<'a> FractionalSolver<'a> {
    pub fn new(p: &'a ProblemSpec, opts: SolverOptions) -> Result<Self> {
        let rho = p.t().rho().ok_or(Error::RequiresIdentityRegularizer)?;
        if !(rho > 0.0) {
            return Err(Error::InvalidRegularizer(format!("rho must be positive, got {rho}")));
        }
        if opts.grid < 3 {
            return Err(Error::InvalidArgument(format!("grid must have at least 3 points, got {}", opts.grid)));
        }
        let system = TrsSystem::new(&p.normal_matrix(), &p.normal_rhs())?;
        Ok(Self {
            p,
            rho,
            b_sq: p.b_weighted_sq(),
            system,
            opts,
        })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn tol_phi(&self) -> f64 {
        self.opts.tol_phi.unwrap_or(1e-9 * (1.0 + self.b_sq))
    }

    pub fn system(&self) -> &TrsSystem {
        &self.system
    }

    fn search(&self) -> RadialSearch<'_> {
        RadialSearch {
            system: &self.system,
            b_sq: self.b_sq,
            grid: self.opts.grid,
        }
    }

    /// `ρ‖x*‖² ≤ G(x*) ≤ G(0) = ‖b‖²_W` bounds the search radius for every `t ≤ ‖b‖²_W`.
    fn r_max(&self) -> f64 {
        self.b_sq.sqrt() / self.rho.sqrt() * 1.05 + 1e-9
    }

    pub fn eval_phi(&self, t: f64) -> Result<PhiValue> {
        if !t.is_finite() {
            return Err(Error::NonFinite { field: "t".into() });
        }
        let poly = RadialPoly {
            quartic: self.rho,
            quadratic: self.rho - t,
            constant: -t,
        };
        let best = self.search().minimize(&poly, self.r_max())?;
        let r2 = best.x.norm_squared();
        let fit = self.p.w().apply_sqrt(&(self.p.a() * &best.x - self.p.b())).norm_squared();
        let phi = fit + self.rho * r2 * r2 + (self.rho - t) * r2 - t;
        Ok(PhiValue {
            t,
            phi,
            r: best.r,
            x: best.x,
        })
    }

    pub fn solve_tstar(&self) -> Result<DinkelbachTrace> {
        let tol = self.tol_phi();
        let g = |x: &DVector<f64>| g_value(self.p, x);
        let mut iterates = Vec::new();
        let mut t = self.b_sq;
        let (mut lo, mut hi) = (0.0_f64, self.b_sq);
        let mut stalls = 0;
        let mut bisecting = false;
        let mut best: Option<(f64, DVector<f64>)> = None;

        for _ in 0..self.opts.max_iter.max(1) {
            let pv = self.eval_phi(t)?;
            iterates.push(DinkelbachIterate {
                t,
                r: pv.r,
                x: pv.x.iter().copied().collect(),
                phi: pv.phi,
            });
            let gx = g(&pv.x);
            if best.as_ref().is_none_or(|(bg, _)| gx < *bg) {
                best = Some((gx, pv.x.clone()));
            }
            if pv.phi.abs() <= tol {
                let t_star = gx;
                let verdict = if t_star > self.rho + tol {
                    Verdict::NonconvexInnerFlagged
                } else {
                    Verdict::Converged
                };
                return Ok(DinkelbachTrace {
                    iterates,
                    t_star,
                    x_star: pv.x,
                    verdict,
                    tol_phi: tol,
                });
            }
            if pv.phi < 0.0 {
                hi = hi.min(t);
            } else {
                lo = lo.max(t);
            }

            let dinkelbach = gx;
            let improving = (dinkelbach - t).abs() > 1e-15 * (1.0 + t.abs());
            if !improving {
                stalls += 1;
            }
            if stalls >= STALL_LIMIT {
                bisecting = true;
            }
            // Out-of-bracket updates only come from round-off; bisect those steps too.
            t = if !bisecting && improving && (lo..=hi).contains(&dinkelbach) {
                dinkelbach
            } else {
                0.5 * (lo + hi)
            };
        }

        let (t_star, x_star) = best.expect("at least one iterate");
        log::warn!("Dinkelbach stopped after {} iterations without |phi| <= {tol:e}", iterates.len());
        Ok(DinkelbachTrace {
            iterates,
            t_star,
            x_star,
            verdict: Verdict::MaxIter,
            tol_phi: tol,
        })
    }

    /// `a* = min_x ‖Ax − b‖²_W + ρ‖x‖⁴`.
    pub fn solve_rls_quartic(&self) -> Result<QuarticSolution> {
        let poly = RadialPoly {
            quartic: self.rho,
            quadratic: 0.0,
            constant: 0.0,
        };
        let r_max = (self.b_sq / self.rho).sqrt().sqrt() * 1.05 + 1e-9;
        let best = self.search().minimize(&poly, r_max)?;
        let r2 = best.x.norm_squared();
        let fit = self.p.w().apply_sqrt(&(self.p.a() * &best.x - self.p.b())).norm_squared();
        let a_star = fit + self.rho * r2 * r2;
        Ok(QuarticSolution {
            a_star,
            certifies_unique: a_star <= self.rho,
            x: best.x,
        })
    }
}

pub fn eval_phi(p: &ProblemSpec, t: f64) -> Result<PhiValue> {
    FractionalSolver::new(p, SolverOptions::default())?.eval_phi(t)
}

pub fn solve_tstar(p: &ProblemSpec, opts: SolverOptions) -> Result<DinkelbachTrace> {
    FractionalSolver::new(p, opts)?.solve_tstar()
}

pub fn solve_rls_quartic(p: &ProblemSpec) -> Result<QuarticSolution> {
    FractionalSolver::new(p, SolverOptions::default())?.solve_rls_quartic()
}

/// Tolerance used for the triviality test inside the solvers.
pub const TRIVIAL_TOL: f64 = 1e-10;

pub fn classify_existence(p: &ProblemSpec, trace: &DinkelbachTrace) -> Result<Existence> {
    if is_trivial_rtls(p, TRIVIAL_TOL)?.trivial {
        return Ok(Existence::Trivial);
    }
    let rho = p.t().rho().ok_or(Error::RequiresIdentityRegularizer)?;
    if trace.verdict.is_converged() && rho >= trace.t_star - 10.0 * trace.tol_phi {
        Ok(Existence::UniqueSolution)
    } else {
        Ok(Existence::Uncertified)
    }
}
