//! Finite computations that exhibit the infinite-dimensional phenomena:
//! minimizing sequences without minimizers, truncation sweeps, the diagonal
//! example and the weak-continuity counterexample.

mod diagonal;
mod models;
mod quadrature;
mod sequences;
mod sweep;

pub use diagonal::{diagonal_solve, DiagonalAudit, DiagonalHead, DiagonalOutcome, Rebalanced};
pub use models::{rtls_default_model, tls_default_model, DiagonalModel, IntegralModel, Kernel, ModelSpec, Sequence};
pub use quadrature::{
    simpson, simpson_weights, weak_continuity_demo, WeakContinuityReport, WeakContinuityRow, INTEGRAL_TOL, LIMIT_TOL,
    SPREAD_TOL,
};
pub use sequences::{nonexistence_rtls_sequence, nonexistence_tls_sequence, SequencePoint, SequenceReport, SkippedEps};
pub use sweep::{truncation_sweep, SweepRow};
