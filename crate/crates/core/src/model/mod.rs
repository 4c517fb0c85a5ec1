//! Problem data, weighted seminorms, objective evaluation and triviality tests.

mod frechet;
mod lift;
mod problem;
mod triviality;
mod weight;

pub use frechet::{frechet_check, hs_derivative, quad_derivative, FrechetErrors};
pub use lift::{PairReport, PairStatus, RankOneLift};
pub use problem::{ModelKind, Origin, ProblemSpec, Regularizer};
pub use triviality::{is_trivial_rtls, is_trivial_tls, TrivialityTest};
pub use weight::{WeightKind, WeightOperator};
