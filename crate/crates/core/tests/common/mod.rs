//! Oracles shared by the integration and acceptance tests. None of them call
//! the solver code paths they are compared against.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rtls_core::ProblemSpec;

/// `min_{‖x‖ = r} ⟨Sx, x⟩ − 2⟨c, x⟩` through the Lagrangian dual
/// `max_{λ < d₁} −Σ ĉᵢ² / (dᵢ − λ) + λr²`, which has no duality gap.
pub struct DualSphere {
    d: Vec<f64>,
    c_hat: Vec<f64>,
    d_min: f64,
    c_norm: f64,
}

impl DualSphere {
    pub fn new(s: &DMatrix<f64>, c: &DVector<f64>) -> Self {
        let eig = s.clone().symmetric_eigen();
        let c_hat = eig.eigenvectors.transpose() * c;
        let d: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let d_min = d.iter().copied().fold(f64::INFINITY, f64::min);
        Self {
            d,
            c_hat: c_hat.iter().copied().collect(),
            d_min,
            c_norm: c.norm(),
        }
    }

    fn dual(&self, lambda: f64, r2: f64) -> f64 {
        let mut v = lambda * r2;
        for (d, c) in self.d.iter().zip(&self.c_hat) {
            v -= c * c / (d - lambda);
        }
        v
    }

    pub fn min_on_sphere(&self, r: f64) -> f64 {
        if r == 0.0 {
            return 0.0;
        }
        let r2 = r * r;
        // At the maximizer (d₁ − λ) ≤ ‖c‖ / r.
        let mut lo = self.d_min - self.c_norm / r - 1.0;
        let mut hi = self.d_min;
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let mut f1 = self.dual(x1, r2);
        let mut f2 = self.dual(x2, r2);
        for _ in 0..120 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = self.dual(x2, r2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = self.dual(x1, r2);
            }
        }
        f1.max(f2)
    }
}

/// `inf G` for `T = √ρ I` by a two-stage radial grid (`points` each) over the
/// spherical reduction `G(r) = (m(r) + ‖b‖²_W) / (1 + r²) + ρr²`.
pub fn grid_t_star(p: &ProblemSpec, rho: f64, points: usize) -> (f64, f64) {
    let sphere = DualSphere::new(&p.normal_matrix(), &p.normal_rhs());
    let b_sq = p.b_weighted_sq();
    let g = |r: f64| (sphere.min_on_sphere(r) + b_sq) / (1.0 + r * r) + rho * r * r;
    // ρr² ≤ G(r*) ≤ G(0) = ‖b‖²_W.
    let r_max = 1.01 * (b_sq / rho).sqrt() + 1e-12;
    let scan = |lo: f64, hi: f64| {
        let step = (hi - lo) / (points - 1) as f64;
        (0..points)
            .map(|i| {
                let r = lo + step * i as f64;
                (g(r), r)
            })
            .fold((f64::INFINITY, 0.0), |best, cur| if cur.0 < best.0 { cur } else { best })
    };
    let (_, r0) = scan(0.0, r_max);
    let h = r_max / (points - 1) as f64;
    scan((r0 - h).max(0.0), r0 + h)
}

/// `⟨Cy, y⟩` for `y = (x, z₁, z₂, 1)` written out term by term.
#[allow(clippy::too_many_arguments)]
pub fn c_expansion(p: &ProblemSpec, rho: f64, t: f64, alpha: f64, beta: f64, x: &DVector<f64>, z1: f64, z2: f64) -> f64 {
    let w = p.w().matrix();
    let fit = p.a() * x - p.b();
    let fit_w = (fit.transpose() * &w * &fit)[(0, 0)];
    z1 + rho * z2 * z2 + (rho - t) * z2 - t + alpha * (fit_w - z1) + beta * (x.norm_squared() - z2)
}

/// The part of the form that survives at `τ = 0`.
pub fn c_homogeneous(p: &ProblemSpec, rho: f64, alpha: f64, beta: f64, x: &DVector<f64>, z2: f64) -> f64 {
    let w = p.w().matrix();
    let ax = p.a() * x;
    alpha * (ax.transpose() * &w * &ax)[(0, 0)] + beta * x.norm_squared() + rho * z2 * z2
}

/// `G` evaluated straight from its definition with dense matrices.
pub fn g_direct(p: &ProblemSpec, x: &DVector<f64>) -> f64 {
    let w = p.w().matrix();
    let fit = p.a() * x - p.b();
    let t = p.t().to_dense(p.n());
    (fit.transpose() * &w * &fit)[(0, 0)] / (1.0 + x.norm_squared()) + (&t * x).norm_squared()
}

pub fn central_difference(f: impl Fn(&DVector<f64>) -> f64, x: &DVector<f64>, h: f64) -> DVector<f64> {
    DVector::from_fn(x.len(), |i, _| {
        let mut plus = x.clone();
        let mut minus = x.clone();
        plus[i] += h;
        minus[i] -= h;
        (f(&plus) - f(&minus)) / (2.0 * h)
    })
}

/// Random PSD matrix `GGᵀ` with rank `rank`.
pub fn random_psd(rng: &mut impl rand::Rng, m: usize, rank: usize) -> DMatrix<f64> {
    let g = rtls_core::random::gaussian_matrix(rng, m, rank);
    &g * g.transpose()
}
