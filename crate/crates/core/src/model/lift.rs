use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

/// The operator `A + ⟨·, x⟩ v`, stored as the pair `(x, v)`.
///
/// For the optimal lift of a given `x`, `v = (b − Ax)/(1 + ‖x‖²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneLift {
    pub x: DVector<f64>,
    pub correction: DVector<f64>,
}

impl RankOneLift {
    /// Dense `A + v xᵀ`.
    pub fn materialize(&self, base: &DMatrix<f64>) -> DMatrix<f64> {
        base + &self.correction * self.x.transpose()
    }

    /// `(A + v xᵀ) y` without forming the dense update.
    pub fn apply(&self, base: &DMatrix<f64>, y: &DVector<f64>) -> DVector<f64> {
        base * y + &self.correction * self.x.dot(y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairStatus {
    /// Existence and uniqueness are certified.
    Solved,
    /// The solver stopped before certifying convergence; the value bounds the infimum from above.
    InfimumOnly,
    /// `b ∈ A(N(T)) + N(W)`: the minimum is zero and attained.
    Trivial,
    /// Best point found; attainment is not certified.
    Heuristic,
}

/// A candidate solution `(A_x, x)` with its objective and first-order residuals.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub x: DVector<f64>,
    pub lift: RankOneLift,
    /// `G(x) = F_x(A_x)`.
    pub objective: f64,
    pub data_term: f64,
    pub reg_term: f64,
    pub residual_normal_eq: f64,
    pub residual_rank_one: f64,
    /// `‖A₀ᵀ W (A₀ − A)‖_F` over the operator scale. At a solution the normal
    /// equation turns this into `‖T*T x xᵀ‖_F`, so it vanishes only when `Tx = 0`.
    pub residual_adjoint: f64,
    pub status: PairStatus,
}

#[derive(Serialize, Deserialize)]
struct PairReportJson {
    x: Vec<f64>,
    correction_vector: Vec<f64>,
    objective: f64,
    data_term: f64,
    reg_term: f64,
    residual_normal_eq: f64,
    residual_rank_one: f64,
    residual_adjoint: f64,
    status: PairStatus,
}

impl Serialize for PairReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PairReportJson {
            x: self.x.iter().copied().collect(),
            correction_vector: self.lift.correction.iter().copied().collect(),
            objective: self.objective,
            data_term: self.data_term,
            reg_term: self.reg_term,
            residual_normal_eq: self.residual_normal_eq,
            residual_rank_one: self.residual_rank_one,
            residual_adjoint: self.residual_adjoint,
            status: self.status,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairReport {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PairReportJson::deserialize(d)?;
        let x = DVector::from_vec(j.x);
        Ok(PairReport {
            lift: RankOneLift {
                x: x.clone(),
                correction: DVector::from_vec(j.correction_vector),
            },
            x,
            objective: j.objective,
            data_term: j.data_term,
            reg_term: j.reg_term,
            residual_normal_eq: j.residual_normal_eq,
            residual_rank_one: j.residual_rank_one,
            residual_adjoint: j.residual_adjoint,
            status: j.status,
        })
    }
}
