//! Solvers for the one-variable reduction: Dinkelbach with an exact spherical
//! inner solver for `T = √ρ I`, and multi-start descent for dense `T`.

mod dinkelbach;
mod general;
mod radial;
mod trs;

pub use dinkelbach::{
    classify_existence, eval_phi, solve_rls_quartic, solve_tstar, DinkelbachIterate, DinkelbachTrace, Existence,
    FractionalSolver, PhiValue, QuarticSolution, SolverOptions, Verdict, DEFAULT_GRID, DEFAULT_MAX_ITER, TRIVIAL_TOL,
};
pub use general::{g_gradient, solve_rtls_general_t};
pub use trs::{trs_equality, TrsSolution, TrsSystem};

pub(crate) use dinkelbach::ser_vec;

use crate::error::Result;
use crate::model::{is_trivial_rtls, PairReport, PairStatus, ProblemSpec};
use crate::reduction::recover_pair;

/// Default number of starts for the dense-`T` heuristic.
pub const DEFAULT_STARTS: usize = 8;

/// Full outcome of [`solve_rtls`].
#[derive(Debug, Clone)]
pub struct RtlsOutcome {
    pub report: PairReport,
    /// Present when the Dinkelbach path was used.
    pub trace: Option<DinkelbachTrace>,
}

/// Dispatching solver: triviality first, then Dinkelbach for `T = √ρ I`, or
/// the multi-start heuristic for dense `T`.
pub fn solve_rtls(p: &ProblemSpec, opts: SolverOptions, starts: usize, seed: u64) -> Result<RtlsOutcome> {
    let triv = is_trivial_rtls(p, TRIVIAL_TOL)?;
    if triv.trivial {
        let x = triv.witness.unwrap_or_else(|| nalgebra::DVector::zeros(p.n()));
        let mut report = recover_pair(p, &x)?;
        report.status = PairStatus::Trivial;
        return Ok(RtlsOutcome { report, trace: None });
    }
    if p.t().rho().is_none() {
        return Ok(RtlsOutcome {
            report: solve_rtls_general_t(p, starts, seed)?,
            trace: None,
        });
    }
    let trace = solve_tstar(p, opts)?;
    let mut report = recover_pair(p, &trace.x_star)?;
    report.status = match (trace.verdict, classify_existence(p, &trace)?) {
        (Verdict::MaxIter, _) => PairStatus::InfimumOnly,
        (_, Existence::UniqueSolution) => PairStatus::Solved,
        (_, Existence::Trivial) => PairStatus::Trivial,
        (_, Existence::Uncertified) => PairStatus::Heuristic,
    };
    Ok(RtlsOutcome {
        report,
        trace: Some(trace),
    })
}
