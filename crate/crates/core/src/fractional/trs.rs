//! Equality-constrained trust-region subproblem
//!
//! ```text
//! min ⟨Sx, x⟩ − 2⟨c, x⟩  subject to  ‖x‖ = r
//! ```
//!
//! solved in the eigenbasis of `S` through the secular equation
//! `Σ ĉᵢ² / (λᵢ + λ)² = r²` with `λ ≥ −λ_min(S)`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone)]
pub struct TrsSolution {
    pub r: f64,
    pub x: DVector<f64>,
    /// Multiplier with `(S + λI) x = c`. `+inf` for `r = 0` with `c ≠ 0`.
    pub lambda: f64,
    pub hard_case: bool,
}

/// Solution in eigen-coordinates; `x = Q x_hat`.
#[derive(Debug, Clone)]
pub(crate) struct HatSolution {
    pub x_hat: DVector<f64>,
    pub lambda: f64,
    pub hard_case: bool,
}

/// `S` and `c` in the eigenbasis of `S`, reusable across many radii.
#[derive(Debug, Clone)]
pub struct TrsSystem {
    eigvals: DVector<f64>,
    eigvecs: DMatrix<f64>,
    c_hat: DVector<f64>,
    c_norm: f64,
    /// Number of leading eigenvalues that belong to the minimal eigenspace.
    min_block: usize,
}

const MAX_BISECTIONS: usize = 400;

impl TrsSystem {
    pub fn new(s: &DMatrix<f64>, c: &DVector<f64>) -> Result<Self> {
        let n = s.nrows();
        if s.ncols() != n {
            return Err(Error::dim("S (square)", n, s.ncols()));
        }
        if c.len() != n {
            return Err(Error::dim("c", n, c.len()));
        }
        let sym = (s + s.transpose()) * 0.5;
        let (eigvals, eigvecs) = linalg::sorted_eigen(&sym);
        let c_hat = eigvecs.transpose() * c;
        let scale = eigvals.amax().max(f64::MIN_POSITIVE);
        let gap_tol = 1e-12 * scale;
        let min_block = eigvals.iter().take_while(|&&l| l - eigvals[0] <= gap_tol).count();
        Ok(Self {
            eigvals,
            eigvecs,
            c_norm: c.norm(),
            c_hat,
            min_block,
        })
    }

    pub fn dim(&self) -> usize {
        self.eigvals.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigvals[0]
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigvals
    }

    pub fn to_original(&self, x_hat: &DVector<f64>) -> DVector<f64> {
        &self.eigvecs * x_hat
    }

    /// `⟨Sx, x⟩ − 2⟨c, x⟩` evaluated in eigen-coordinates.
    pub(crate) fn quad_value(&self, x_hat: &DVector<f64>) -> f64 {
        self.eigvals
            .iter()
            .zip(x_hat.iter())
            .zip(self.c_hat.iter())
            .map(|((l, x), c)| l * x * x - 2.0 * c * x)
            .sum()
    }

    fn norm_at(&self, lambda: f64) -> f64 {
        self.eigvals
            .iter()
            .zip(self.c_hat.iter())
            .filter(|(_, c)| **c != 0.0)
            .map(|(l, c)| (c / (l + lambda)).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn solve(&self, r: f64) -> Result<TrsSolution> {
        let h = self.solve_hat(r)?;
        Ok(TrsSolution {
            r,
            x: self.to_original(&h.x_hat),
            lambda: h.lambda,
            hard_case: h.hard_case,
        })
    }

    pub(crate) fn solve_hat(&self, r: f64) -> Result<HatSolution> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::InvalidArgument(format!("radius must be finite and >= 0, got {r}")));
        }
        let n = self.dim();
        let l1 = self.eigvals[0];
        if r == 0.0 {
            let lambda = if self.c_norm == 0.0 { -l1 } else { f64::INFINITY };
            return Ok(HatSolution {
                x_hat: DVector::zeros(n),
                lambda,
                hard_case: self.c_norm == 0.0,
            });
        }

        let c_min = self.c_hat.rows(0, self.min_block).norm();
        if c_min <= 1e-13 * self.c_norm {
            let mut x_hat = DVector::zeros(n);
            for i in self.min_block..n {
                x_hat[i] = self.c_hat[i] / (self.eigvals[i] - l1);
            }
            let rest = x_hat.norm();
            if rest <= r {
                x_hat[0] = (r * r - rest * rest).max(0.0).sqrt();
                return Ok(HatSolution {
                    x_hat,
                    lambda: -l1,
                    hard_case: true,
                });
            }
        }

        let mut lo = -l1;
        let mut hi = -l1 + self.c_norm / r;
        if !(self.norm_at(hi) <= r * (1.0 + 1e-12)) {
            return Err(Error::SecularBracket {
                r,
                lambda_min: l1,
                c_norm: self.c_norm,
            });
        }
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.norm_at(mid) > r {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lambda = hi;
        let mut x_hat = DVector::from_iterator(
            n,
            self.eigvals
                .iter()
                .zip(self.c_hat.iter())
                .map(|(l, c)| if *c == 0.0 { 0.0 } else { c / (l + lambda) }),
        );
        let norm = x_hat.norm();
        if norm > 0.0 {
            x_hat *= r / norm;
        }
        Ok(HatSolution {
            x_hat,
            lambda,
            hard_case: false,
        })
    }
}

/// One-shot solve; prefer [`TrsSystem`] when many radii share `S` and `c`.
pub fn trs_equality(s: &DMatrix<f64>, c: &DVector<f64>, r: f64) -> Result<TrsSolution> {
    TrsSystem::new(s, c)?.solve(r)
}
