use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "rtls", version, about = "Regularized weighted total least squares: solver, certificate and demos")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a problem file; exit 0 when solved or trivial, 2 when only a best-effort point is available.
    Solve(SolveArgs),
    /// Certify t* by semidefinite bisection and compare it with the Dinkelbach value.
    Certify(CertifyArgs),
    /// Lab demonstrations.
    #[command(subcommand)]
    Demo(Demo),
    /// Unweighted total least squares through the SVD of (A | b).
    ClassicTls(ClassicArgs),
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// Minimizing sequence for the unregularized problem.
    NonexistTls(SequenceArgs),
    /// Minimizing sequence for the regularized problem.
    NonexistRtls(SequenceArgs),
    /// Diagonal operator with finitely supported data.
    Diagonal(DiagonalArgs),
    /// Solve a model at increasing truncation orders.
    Sweep(SweepArgs),
    /// Weak-continuity counterexample by Simpson quadrature.
    Weakcont(WeakcontArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Stopping tolerance on |φ(t)|; defaults to 1e-9 (1 + ‖b‖²_W).
    #[arg(long)]
    pub tol_phi: Option<f64>,
    /// Radial grid size for the inner minimization.
    #[arg(long, default_value_t = rtls_core::fractional::DEFAULT_GRID)]
    pub grid: usize,
    #[arg(long, default_value_t = rtls_core::fractional::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Multi-start count for dense regularizers.
    #[arg(long, default_value_t = rtls_core::fractional::DEFAULT_STARTS)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SolverArgs {
    pub fn options(&self) -> rtls_core::fractional::SolverOptions {
        rtls_core::fractional::SolverOptions {
            tol_phi: self.tol_phi,
            grid: self.grid,
            max_iter: self.max_iter,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_parser = existing_file)]
    pub problem: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["problem", "batch"])))]
pub struct CertifyArgs {
    #[arg(long, value_parser = existing_file)]
    pub problem: Option<PathBuf>,
    /// Certify this many seeded random 3×3 instances instead of a file.
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bisection width on t; defaults to 1e-8 (1 + ‖b‖²_W).
    #[arg(long)]
    pub tol_t: Option<f64>,
    /// Side of the (α, β) search box.
    #[arg(long = "box")]
    pub box_scale: Option<f64>,
    /// Include the certificate matrix C in the output.
    #[arg(long = "keep-C")]
    pub keep_c: bool,
    #[arg(long)]
    pub tol_phi: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    /// Diagonal or integral model file; the built-in default model when omitted.
    #[arg(long, value_parser = existing_file)]
    pub model: Option<PathBuf>,
    /// Truncation order.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4")]
    pub eps: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DiagonalArgs {
    /// Diagonal model with `T = √ρ I`.
    #[arg(long, value_parser = existing_file)]
    pub model: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = existing_file)]
    pub model: PathBuf,
    /// Strictly increasing truncation orders.
    #[arg(long = "N", value_delimiter = ',', required = true)]
    pub orders: Vec<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct WeakcontArgs {
    #[arg(long, value_delimiter = ',', default_value = "1,2,8,32")]
    pub n: Vec<u32>,
    /// Odd number of Simpson nodes.
    #[arg(long, default_value_t = 8193)]
    pub quad_points: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ClassicArgs {
    /// Problem file; only A and b are used.
    #[arg(long, value_parser = existing_file)]
    pub problem: PathBuf,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn existing_file(s: &str) -> Result<PathBuf, String> {
    let p = Path::new(s);
    if p.is_file() {
        Ok(p.to_path_buf())
    } else {
        Err(format!("no such file: {s}"))
    }
}
