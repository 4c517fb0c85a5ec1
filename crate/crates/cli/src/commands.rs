use std::path::Path;

use anyhow::{bail, Context, Result};
use rand::Rng;
use serde::Serialize;
use serde_json::Value;

use crate::args::{CertifyArgs, ClassicArgs, DiagonalArgs, SequenceArgs, SolveArgs, SweepArgs, WeakcontArgs};
use crate::output::{emit, num, snake, Table};
use rtls_core::certificate::{agreement_holds, certify_tstar, Certificate, CertifyOptions};
use rtls_core::fractional::{classify_existence, solve_rtls, solve_tstar, DinkelbachTrace, Existence, SolverOptions, Verdict};
use rtls_core::io::{problem_to_value, read_problem};
use rtls_core::lab::{
    diagonal_solve, nonexistence_rtls_sequence, nonexistence_tls_sequence, rtls_default_model, tls_default_model,
    truncation_sweep, weak_continuity_demo, DiagonalAudit, DiagonalModel, ModelSpec, SequenceReport, SweepRow,
};
use rtls_core::random::{random_problem, rng};
use rtls_core::spectral::solve_classic_tls;
use rtls_core::{PairReport, PairStatus, ProblemSpec};

const DEFAULT_SEQUENCE_N: usize = 200;

/// 0 for certified or trivial results, 2 for best-effort ones.
fn status_code(s: PairStatus) -> u8 {
    match s {
        PairStatus::Solved | PairStatus::Trivial => 0,
        PairStatus::InfimumOnly | PairStatus::Heuristic => 2,
    }
}

fn load_problem(path: &Path) -> Result<ProblemSpec> {
    read_problem(path).with_context(|| format!("reading problem {}", path.display()))
}

fn load_model(path: &Path) -> Result<ModelSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading model {}", path.display()))?;
    ModelSpec::parse(&text).with_context(|| format!("parsing model {}", path.display()))
}

fn existence_of(p: &ProblemSpec, trace: Option<&DinkelbachTrace>) -> Result<Option<Existence>> {
    Ok(match trace {
        Some(t) => Some(classify_existence(p, t)?),
        None => None,
    })
}

fn report_row(table: &mut Table, r: &PairReport) {
    table.push(vec![
        num(r.objective),
        num(r.data_term),
        num(r.reg_term),
        num(r.x.norm()),
        num(r.residual_normal_eq),
        num(r.residual_rank_one),
        num(r.residual_adjoint),
        snake(&r.status),
    ]);
}

const REPORT_HEADER: [&str; 8] = [
    "objective",
    "data_term",
    "reg_term",
    "x_norm",
    "residual_normal_eq",
    "residual_rank_one",
    "residual_adjoint",
    "status",
];

pub fn solve(a: &SolveArgs) -> Result<u8> {
    let p = load_problem(&a.problem)?;
    let out = solve_rtls(&p, a.solver.options(), a.solver.starts, a.solver.seed)?;
    let existence = existence_of(&p, out.trace.as_ref())?;
    if let Some(t) = &out.trace {
        if !t.verdict.is_converged() {
            log::warn!("Dinkelbach stopped with verdict {:?} after {} iterations", t.verdict, t.iterates.len());
        }
    }

    #[derive(Serialize)]
    struct SolveResult<'a> {
        report: &'a PairReport,
        existence: Option<Existence>,
        trace: Option<&'a DinkelbachTrace>,
    }
    let payload = SolveResult {
        report: &out.report,
        existence,
        trace: out.trace.as_ref(),
    };
    emit(&a.output, "solve", Some(a.solver.seed), payload, || {
        let mut t = Table::new(&REPORT_HEADER);
        report_row(&mut t, &out.report);
        t
    })?;
    Ok(status_code(out.report.status))
}

#[derive(Serialize)]
struct CertifyRecord {
    instance: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    problem: Option<Value>,
    t_certified: f64,
    t_dinkelbach: f64,
    dinkelbach_verdict: Verdict,
    gap: f64,
    tolerance: f64,
    agreement: bool,
    certificate: Certificate,
}

fn certify_one(p: &ProblemSpec, a: &CertifyArgs, instance: usize, keep_problem: bool) -> Result<CertifyRecord> {
    let tol_t = a.tol_t.unwrap_or(1e-8 * (1.0 + p.b_weighted_sq()));
    let cert = certify_tstar(
        p,
        CertifyOptions {
            tol_t: Some(tol_t),
            box_scale: a.box_scale,
            keep_c: a.keep_c,
        },
    )?;
    let trace = solve_tstar(
        p,
        SolverOptions {
            tol_phi: a.tol_phi,
            ..SolverOptions::default()
        },
    )?;
    let agreement = trace.verdict.is_converged() && agreement_holds(cert.t, trace.t_star, tol_t);
    Ok(CertifyRecord {
        instance,
        problem: keep_problem.then(|| problem_to_value(p)),
        t_certified: cert.t,
        t_dinkelbach: trace.t_star,
        dinkelbach_verdict: trace.verdict,
        gap: (cert.t - trace.t_star).abs(),
        tolerance: tol_t.max(1e-4 * (1.0 + trace.t_star)),
        agreement,
        certificate: cert,
    })
}

pub fn certify(a: &CertifyArgs) -> Result<u8> {
    let records = match (&a.problem, a.batch) {
        (Some(path), _) => vec![certify_one(&load_problem(path)?, a, 0, false)?],
        (None, Some(k)) => {
            let mut r = rng(a.seed);
            (0..k)
                .map(|i| {
                    let rho = 10f64.powf(r.random_range(-1.0..1.0));
                    let p = random_problem(&mut r, 3, 3, rho)?;
                    certify_one(&p, a, i, true)
                })
                .collect::<Result<Vec<_>>>()?
        }
        (None, None) => bail!("either --problem or --batch is required"),
    };
    let all_agree = records.iter().all(|r| r.agreement);
    for r in records.iter().filter(|r| !r.agreement) {
        log::warn!(
            "instance {}: certified {} vs Dinkelbach {} (gap {:e} > {:e})",
            r.instance,
            r.t_certified,
            r.t_dinkelbach,
            r.gap,
            r.tolerance
        );
    }

    #[derive(Serialize)]
    struct CertifyResult<'a> {
        all_agree: bool,
        records: &'a [CertifyRecord],
    }
    let seed = a.batch.map(|_| a.seed);
    emit(&a.output, "certify", seed, CertifyResult { all_agree, records: &records }, || {
        let mut t = Table::new(&[
            "instance",
            "t_certified",
            "t_dinkelbach",
            "gap",
            "tolerance",
            "agreement",
            "alpha",
            "beta",
            "lambda_min",
        ]);
        for r in &records {
            t.push(vec![
                r.instance.to_string(),
                num(r.t_certified),
                num(r.t_dinkelbach),
                num(r.gap),
                num(r.tolerance),
                r.agreement.to_string(),
                num(r.certificate.alpha),
                num(r.certificate.beta),
                num(r.certificate.lambda_min),
            ]);
        }
        t
    })?;
    Ok(if all_agree { 0 } else { 1 })
}

fn sequence_problem(a: &SequenceArgs, default: fn(usize) -> DiagonalModel) -> Result<(ProblemSpec, usize)> {
    let model = match &a.model {
        Some(path) => load_model(path)?,
        None => ModelSpec::Diagonal(default(a.n.unwrap_or(DEFAULT_SEQUENCE_N))),
    };
    let n = a.n.or(model.default_n()).unwrap_or(DEFAULT_SEQUENCE_N);
    Ok((model.build(n)?, n))
}

pub fn nonexist(a: &SequenceArgs, regularized: bool) -> Result<u8> {
    let (p, n) = if regularized {
        sequence_problem(a, rtls_default_model)?
    } else {
        sequence_problem(a, tls_default_model)?
    };
    let report = if regularized {
        nonexistence_rtls_sequence(&p, &a.eps)?
    } else {
        nonexistence_tls_sequence(&p, &a.eps)?
    };
    let ok = report.points.iter().all(|pt| pt.within_bound());

    #[derive(Serialize)]
    struct SequenceResult<'a> {
        n: usize,
        report: &'a SequenceReport,
    }
    let command = if regularized { "demo nonexist-rtls" } else { "demo nonexist-tls" };
    emit(&a.output, command, None, SequenceResult { n, report: &report }, || {
        let mut t = Table::new(&["eps", "objective", "bound", "within_bound", "interpolation_residual", "status"]);
        for pt in &report.points {
            t.push(vec![
                num(pt.eps),
                num(pt.objective),
                num(pt.bound),
                pt.within_bound().to_string(),
                num(pt.interpolation_residual),
                "ok".into(),
            ]);
        }
        for s in &report.skipped {
            t.push(vec![num(s.eps), String::new(), String::new(), String::new(), String::new(), "skipped".into()]);
        }
        t
    })?;
    if !ok {
        log::error!("a sequence point exceeds its bound");
    }
    Ok(if ok { 0 } else { 1 })
}

pub fn diagonal(a: &DiagonalArgs) -> Result<u8> {
    let model = match load_model(&a.model)? {
        ModelSpec::Diagonal(m) if m.t.is_none() => m,
        ModelSpec::Diagonal(_) => bail!("demo diagonal needs T = sqrt(rho) I; remove `t` from the model"),
        ModelSpec::Integral(_) => bail!("demo diagonal needs a diagonal model"),
    };
    let n = match a.n.or(model.n) {
        Some(n) => n,
        None => bail!("truncation order missing: pass --n or set `n` in the model"),
    };
    let av: Vec<f64> = model.a.head(n).iter().copied().collect();
    let wv: Vec<f64> = model.w.head(n).iter().copied().collect();
    let out = diagonal_solve(&av, &wv, &model.b, model.rho, n, a.solver.options())?;

    #[derive(Serialize)]
    struct DiagonalResult<'a> {
        n: usize,
        report: &'a PairReport,
        audit: &'a DiagonalAudit,
        trace: Option<&'a DinkelbachTrace>,
    }
    let payload = DiagonalResult {
        n,
        report: &out.report,
        audit: &out.audit,
        trace: out.trace.as_ref(),
    };
    emit(&a.output, "demo diagonal", None, payload, || {
        let mut t = Table::new(&[
            "N",
            "support",
            "tail_norm",
            "tail_fraction",
            "h_at_solution",
            "g_at_solution",
            "active_fit_gap",
            "h_rebalanced",
            "status",
        ]);
        t.push(vec![
            n.to_string(),
            out.audit.support.to_string(),
            num(out.audit.tail_norm),
            num(out.audit.tail_fraction),
            num(out.audit.h_at_solution),
            num(out.audit.g_at_solution),
            num(out.audit.active_fit_gap),
            out.audit.rebalanced.as_ref().map_or(String::new(), |r| num(r.h_rebalanced)),
            snake(&out.report.status),
        ]);
        t
    })?;
    Ok(status_code(out.report.status))
}

pub fn sweep(a: &SweepArgs) -> Result<u8> {
    let model = load_model(&a.model)?;
    let rows = truncation_sweep(&model, &a.orders, a.solver.options(), a.solver.starts, a.solver.seed)?;
    let code = rows.iter().map(|r| status_code(r.status)).max().unwrap_or(0);

    #[derive(Serialize)]
    struct SweepResult<'a> {
        rows: &'a [SweepRow],
    }
    emit(&a.output, "demo sweep", Some(a.solver.seed), SweepResult { rows: &rows }, || {
        let mut t = Table::new(&["N", "t_star_N", "x_norm", "objective", "status"]);
        for r in &rows {
            t.push(vec![r.n.to_string(), num(r.t_star_n), num(r.x_norm), num(r.objective), snake(&r.status)]);
        }
        t
    })?;
    Ok(code)
}

pub fn weakcont(a: &WeakcontArgs) -> Result<u8> {
    let report = weak_continuity_demo(&a.n, a.quad_points)?;
    emit(&a.output, "demo weakcont", None, &report, || {
        let mut t = Table::new(&["n", "integral", "error_vs_7pi", "limit_value"]);
        for r in &report.rows {
            t.push(vec![r.n.to_string(), num(r.integral), num(r.error_vs_7pi), num(r.limit_value)]);
        }
        t
    })?;
    if !report.passed {
        log::error!("weak-continuity assertions failed (limit error {:e}, spread {:e})", report.limit_error, report.spread);
    }
    Ok(if report.passed { 0 } else { 1 })
}

pub fn classic_tls(a: &ClassicArgs) -> Result<u8> {
    let p = load_problem(&a.problem)?;
    log::info!("classic TLS ignores W and T");
    let sol = solve_classic_tls(p.a(), p.b())?;
    emit(&a.output, "classic-tls", None, &sol, || {
        let mut t = Table::new(&["i", "x"]);
        for (i, v) in sol.x.iter().enumerate() {
            t.push(vec![i.to_string(), num(*v)]);
        }
        t
    })?;
    Ok(0)
}
