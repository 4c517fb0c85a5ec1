//! Seeded instances shared by the benchmark targets.

use nalgebra::{DMatrix, DVector};
use rtls_core::random::{random_certified_problem, random_problem, rng};
use rtls_core::{ProblemSpec, Regularizer};

/// Square instance in the certified regime `ρ = 1.5 ‖b‖²_W`.
pub fn certified(n: usize, seed: u64) -> ProblemSpec {
    random_certified_problem(&mut rng(seed), n, n, 1.5).expect("valid instance")
}

/// Square instance with a small `ρ`, where the inner problem is nonconvex.
pub fn small_rho(n: usize, seed: u64) -> ProblemSpec {
    random_problem(&mut rng(seed), n, n, 0.05).expect("valid instance")
}

/// The same instance with `T = √ρ I` stored densely, which routes to the descent heuristic.
pub fn dense_regularizer(p: &ProblemSpec) -> ProblemSpec {
    let rho = p.t().rho().expect("identity regularizer");
    p.with_regularizer(Regularizer::Dense(DMatrix::identity(p.n(), p.n()) * rho.sqrt()))
        .expect("same dimension")
}

/// Shifted Gram matrix and right-hand side for the sphere-constrained quadratic.
pub fn trs_data(n: usize, seed: u64) -> (DMatrix<f64>, DVector<f64>) {
    let p = small_rho(n, seed);
    let s = p.normal_matrix() - DMatrix::identity(n, n);
    (s, p.normal_rhs())
}
