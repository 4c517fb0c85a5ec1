//! Global minimization of `‖Ax − b‖²_W + P(‖x‖²)` for a quadratic `P`,
//! reduced to a search over the radius `r = ‖x‖`.
//!
//! For a fixed radius the best `x` is the trust-region solution, so the
//! objective becomes `f(r) = m(r) + P(r²)`. By the envelope theorem
//! `f'(r) = 2r (P'(r²) − λ(r))`, and `λ(r)` is nonincreasing, so `f` has at
//! most one interior critical point. The dense grid and golden-section pass
//! locate the bracket; a final bisection on the sign of `P'(r²) − λ(r)` makes
//! the stationarity condition hold to machine precision.

use nalgebra::DVector;

use super::trs::{HatSolution, TrsSystem};
use crate::error::Result;

/// `P(u) = quartic u² + quadratic u + constant`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RadialPoly {
    pub quartic: f64,
    pub quadratic: f64,
    pub constant: f64,
}

impl RadialPoly {
    fn value(&self, u: f64) -> f64 {
        (self.quartic * u + self.quadratic) * u + self.constant
    }

    fn slope(&self, u: f64) -> f64 {
        2.0 * self.quartic * u + self.quadratic
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RadialMin {
    pub r: f64,
    pub x: DVector<f64>,
}

pub(crate) struct RadialSearch<'a> {
    pub system: &'a TrsSystem,
    /// `‖b‖²_W`, the value of `m(0)`.
    pub b_sq: f64,
    pub grid: usize,
}

const MAX_DOUBLINGS: usize = 40;
const GOLDEN_RTOL: f64 = 1e-12;

impl RadialSearch<'_> {
    fn eval(&self, poly: &RadialPoly, r: f64) -> Result<(f64, HatSolution)> {
        let h = self.system.solve_hat(r)?;
        let m = (self.system.quad_value(&h.x_hat) + self.b_sq).max(0.0);
        Ok((m + poly.value(r * r), h))
    }

    /// Sign function `P'(r²) − λ(r)`, nondecreasing in `r`.
    fn slope_sign(&self, poly: &RadialPoly, r: f64) -> Result<f64> {
        let h = self.system.solve_hat(r)?;
        Ok(poly.slope(r * r) - h.lambda)
    }

    pub fn minimize(&self, poly: &RadialPoly, r_max: f64) -> Result<RadialMin> {
        let mut r_max = r_max.max(f64::MIN_POSITIVE);
        for _ in 0..MAX_DOUBLINGS {
            let best = self.minimize_on(poly, r_max)?;
            if best.r < 0.99 * r_max {
                return Ok(best);
            }
            log::debug!("radial minimizer at {:.3e} hit the boundary {:.3e}; doubling", best.r, r_max);
            r_max *= 2.0;
        }
        self.minimize_on(poly, r_max)
    }

    fn minimize_on(&self, poly: &RadialPoly, r_max: f64) -> Result<RadialMin> {
        let grid = self.grid.max(3);
        let step = r_max / (grid - 1) as f64;
        let mut best_k = 0;
        let mut best_v = f64::INFINITY;
        for k in 0..grid {
            let (v, _) = self.eval(poly, k as f64 * step)?;
            if v < best_v {
                best_v = v;
                best_k = k;
            }
        }
        let lo = best_k.saturating_sub(1) as f64 * step;
        let hi = ((best_k + 1).min(grid - 1)) as f64 * step;

        let mut candidates = vec![0.0, best_k as f64 * step];
        candidates.push(self.golden(poly, lo, hi, GOLDEN_RTOL * r_max)?);
        if let Some(r) = self.polish(poly, lo, hi)? {
            candidates.push(r);
        }

        let mut best: Option<(f64, f64, HatSolution)> = None;
        // Candidates are ordered so a later, more precise point wins ties.
        for r in candidates {
            let (v, h) = self.eval(poly, r)?;
            if best.as_ref().is_none_or(|(_, bv, _)| v <= *bv) {
                best = Some((r, v, h));
            }
        }
        let (r, _, h) = best.expect("at least one candidate");
        Ok(RadialMin {
            r,
            x: self.system.to_original(&h.x_hat),
        })
    }

    fn golden(&self, poly: &RadialPoly, mut a: f64, mut b: f64, width: f64) -> Result<f64> {
        let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let mut fc = self.eval(poly, c)?.0;
        let mut fd = self.eval(poly, d)?.0;
        while b - a > width {
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = self.eval(poly, c)?.0;
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = self.eval(poly, d)?.0;
            }
            if c <= a || d >= b {
                break;
            }
        }
        Ok(0.5 * (a + b))
    }

    /// Bisection on the derivative sign inside `[lo, hi]`; `None` when the
    /// sign does not change there.
    fn polish(&self, poly: &RadialPoly, lo: f64, hi: f64) -> Result<Option<f64>> {
        let mut a = if lo > 0.0 { lo } else { hi * 1e-12 };
        let mut b = hi;
        if !(a > 0.0) || !(b > a) {
            return Ok(None);
        }
        if self.slope_sign(poly, a)? >= 0.0 || self.slope_sign(poly, b)? <= 0.0 {
            return Ok(None);
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if self.slope_sign(poly, mid)? < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(Some(0.5 * (a + b)))
    }
}
