use serde::Serialize;

use super::models::ModelSpec;
use crate::error::{Error, Result};
use crate::fractional::{solve_rtls, SolverOptions};
use crate::model::PairStatus;

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(rename = "N")]
    pub n: usize,
    /// `inf G` of the truncation (the best value found for dense `T`).
    pub t_star_n: f64,
    pub x_norm: f64,
    pub objective: f64,
    pub status: PairStatus,
}

/// Solve the truncations of `model` at each order in `n_list` (strictly increasing).
pub fn truncation_sweep(model: &ModelSpec, n_list: &[usize], opts: SolverOptions, starts: usize, seed: u64) -> Result<Vec<SweepRow>> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("N list is empty".into()));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) || n_list[0] == 0 {
        return Err(Error::InvalidArgument(format!("N list must be positive and strictly increasing: {n_list:?}")));
    }
    n_list
        .iter()
        .map(|&n| {
            let p = model.build(n)?;
            let out = solve_rtls(&p, opts, starts, seed)?;
            let t_star_n = out.trace.as_ref().map_or(out.report.objective, |t| t.t_star);
            Ok(SweepRow {
                n,
                t_star_n,
                x_norm: out.report.x.norm(),
                objective: out.report.objective,
                status: out.report.status,
            })
        })
        .collect()
}
