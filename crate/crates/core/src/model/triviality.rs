//! Tests for `b ∈ R(A) + N(W)` and `b ∈ A(N(T)) + N(W)`.

use nalgebra::{DMatrix, DVector};

use super::problem::ProblemSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, RANK_RTOL};

#[derive(Debug, Clone)]
pub struct TrivialityTest {
    pub trivial: bool,
    /// `min ‖W^{1/2}(A x − b)‖` over the admissible `x`.
    pub residual: f64,
    /// The acceptance threshold `tol (1 + ‖W^{1/2} b‖)`.
    pub threshold: f64,
    /// The least-squares minimizer; only set when `trivial`.
    pub witness: Option<DVector<f64>>,
}

/// Triviality of the weighted TLS problem.
pub fn is_trivial_tls(p: &ProblemSpec, tol: f64) -> Result<TrivialityTest> {
    check_tol(tol)?;
    let basis = DMatrix::identity(p.n(), p.n());
    restricted_test(p, &basis, tol)
}

/// Triviality of the regularized problem: `A` is restricted to the numerical
/// nullspace of `T` before the range test.
pub fn is_trivial_rtls(p: &ProblemSpec, tol: f64) -> Result<TrivialityTest> {
    check_tol(tol)?;
    let basis = match p.t().rho() {
        Some(_) => DMatrix::zeros(p.n(), 0),
        None => linalg::nullspace_basis(&p.t().to_dense(p.n()), RANK_RTOL),
    };
    restricted_test(p, &basis, tol)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tol must be positive, got {tol}")));
    }
    Ok(())
}

fn restricted_test(p: &ProblemSpec, basis: &DMatrix<f64>, tol: f64) -> Result<TrivialityTest> {
    let wb = p.w().apply_sqrt(p.b());
    let threshold = tol * (1.0 + wb.norm());
    let (x, residual) = if basis.ncols() == 0 {
        (DVector::zeros(p.n()), wb.norm())
    } else {
        let m = p.weighted_a() * basis;
        let coeffs = linalg::lstsq(&m, &wb, RANK_RTOL);
        let residual = (&m * &coeffs - &wb).norm();
        (basis * coeffs, residual)
    };
    let trivial = residual <= threshold;
    Ok(TrivialityTest {
        trivial,
        residual,
        threshold,
        witness: trivial.then_some(x),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Regularizer, WeightOperator};

    fn v(xs: &[f64]) -> DVector<f64> {
        DVector::from_row_slice(xs)
    }

    fn problem(a: DMatrix<f64>, b: DVector<f64>, w: WeightOperator, t: Regularizer) -> ProblemSpec {
        ProblemSpec::new(a, b, w, t).unwrap()
    }

    #[test]
    fn b_in_range_is_trivial() {
        let a = DMatrix::from_row_slice(3, 2, &[1.0, 2.0, 0.0, 1.0, 4.0, -1.0]);
        let b = &a * v(&[1.0, 1.0]);
        let w = WeightOperator::dense(DMatrix::from_row_slice(
            3,
            3,
            &[2.0, 0.5, 0.0, 0.5, 1.0, 0.0, 0.0, 0.0, 0.0],
        ))
        .unwrap();
        let p = problem(a, b, w, Regularizer::IdentityScaled { rho: 1.0 });
        let test = is_trivial_tls(&p, 1e-10).unwrap();
        assert!(test.trivial);
        let x = test.witness.unwrap();
        assert!(p.objective_tls(p.a(), &x).unwrap() <= 10.0 * 1e-20);
    }

    #[test]
    fn b_in_weight_nullspace_is_trivial() {
        let p = problem(
            DMatrix::zeros(2, 1),
            v(&[0.0, 5.0]),
            WeightOperator::diagonal(v(&[1.0, 0.0])).unwrap(),
            Regularizer::IdentityScaled { rho: 1.0 },
        );
        assert!(is_trivial_tls(&p, 1e-10).unwrap().trivial);
        assert!(is_trivial_rtls(&p, 1e-10).unwrap().trivial);
    }

    #[test]
    fn orthogonal_data_is_not_trivial() {
        let p = problem(
            DMatrix::from_row_slice(2, 1, &[1.0, 0.0]),
            v(&[0.0, 1.0]),
            WeightOperator::identity(2),
            Regularizer::IdentityScaled { rho: 1.0 },
        );
        let test = is_trivial_tls(&p, 1e-10).unwrap();
        assert!(!test.trivial);
        assert!((test.residual - 1.0).abs() < 1e-14);
        assert!(test.witness.is_none());
    }

    #[test]
    fn injective_regularizer_reduces_to_weight_nullspace() {
        let a = DMatrix::identity(2, 2);
        let p = problem(
            a,
            v(&[1.0, 0.0]),
            WeightOperator::identity(2),
            Regularizer::IdentityScaled { rho: 0.5 },
        );
        // b is in R(A) but not in A(N(T)) + N(W).
        assert!(is_trivial_tls(&p, 1e-10).unwrap().trivial);
        assert!(!is_trivial_rtls(&p, 1e-10).unwrap().trivial);
    }

    #[test]
    fn regularizer_nullspace_is_used() {
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let b = a.column(0).into_owned();
        let t = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let p = problem(a, b, WeightOperator::identity(2), Regularizer::Dense(t));
        let test = is_trivial_rtls(&p, 1e-10).unwrap();
        assert!(test.trivial);
        let x = test.witness.unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1].abs() < 1e-12);
    }

    #[test]
    fn full_rank_dense_regularizer_matches_projection_oracle() {
        // Direct oracle: with N(T) = {0}, triviality is ‖W^{1/2} b‖ <= threshold.
        let t = DMatrix::from_row_slice(2, 2, &[1.0, 0.3, -0.2, 2.0]);
        for (wdiag, expected) in [([1.0, 0.0], false), ([0.0, 0.0], true)] {
            let p = problem(
                DMatrix::identity(2, 2),
                v(&[1.0, 0.0]),
                WeightOperator::diagonal(v(&wdiag)).unwrap(),
                Regularizer::Dense(t.clone()),
            );
            let direct = p.w().apply_sqrt(p.b()).norm();
            let test = is_trivial_rtls(&p, 1e-10).unwrap();
            assert_eq!(test.trivial, expected);
            assert!((test.residual - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_nonpositive_tol() {
        let p = problem(
            DMatrix::zeros(1, 1),
            v(&[1.0]),
            WeightOperator::identity(1),
            Regularizer::IdentityScaled { rho: 1.0 },
        );
        assert!(is_trivial_tls(&p, 0.0).is_err());
    }
}
