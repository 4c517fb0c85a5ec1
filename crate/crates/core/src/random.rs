//! Seeded random instances for batch runs, tests and benchmarks.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::model::{ModelKind, Origin, ProblemSpec, Regularizer, WeightOperator};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
}

pub fn gaussian_vector(rng: &mut impl Rng, len: usize) -> DVector<f64> {
    DVector::from_fn(len, |_, _| StandardNormal.sample(rng))
}

/// Gaussian `A` and `b`, diagonal weights in `[0.1, 2]`, `T = √ρ I`.
pub fn random_problem(rng: &mut impl Rng, m: usize, n: usize, rho: f64) -> Result<ProblemSpec> {
    let a = gaussian_matrix(rng, m, n);
    let b = gaussian_vector(rng, m);
    let w = DVector::from_fn(m, |_, _| rng.random_range(0.1..2.0));
    Ok(ProblemSpec::new(a, b, WeightOperator::diagonal(w)?, Regularizer::identity_scaled(rho)?)?.with_origin(Origin {
        model_kind: ModelKind::Dense,
        truncation_order: n,
    }))
}

/// As [`random_problem`] with `ρ = ‖b‖²_W · factor`, which puts the instance in
/// the certified regime `ρ ≥ t*` for `factor ≥ 1`.
pub fn random_certified_problem(rng: &mut impl Rng, m: usize, n: usize, factor: f64) -> Result<ProblemSpec> {
    let p = random_problem(rng, m, n, 1.0)?;
    let rho = (p.b_weighted_sq() * factor).max(f64::MIN_POSITIVE);
    p.with_regularizer(Regularizer::identity_scaled(rho)?)
}
