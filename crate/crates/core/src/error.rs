use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("empty dimension in {0}")]
    EmptyDimension(&'static str),

    #[error("non-finite value in field `{field}`")]
    NonFinite { field: String },

    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("weight operator is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("weight operator is not positive semidefinite (min eigenvalue {min_eig:e}, floor {floor:e})")]
    NotPsd { min_eig: f64, floor: f64 },

    #[error("invalid regularizer: {0}")]
    InvalidRegularizer(String),

    #[error("operation requires T = sqrt(rho) I, got a dense regularizer")]
    RequiresIdentityRegularizer,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("secular equation failed to bracket a root for r = {r:e} (lambda_min = {lambda_min:e}, |c| = {c_norm:e})")]
    SecularBracket { r: f64, lambda_min: f64, c_norm: f64 },

    #[error("classic TLS nongeneric: last component of the minimal right singular vector is {last:e}")]
    ClassicTlsNongeneric { last: f64 },

    #[error("classic TLS: smallest singular value is repeated ({sigma_a:e} vs {sigma_b:e})")]
    TiedSmallestSingularValue {
        sigma_a: f64,
        sigma_b: f64,
        /// Both candidate solution vectors, when their last component allows a solution.
        candidates: Vec<Vec<f64>>,
    },

    #[error("problem is trivial; the nonexistence construction needs a nontrivial instance")]
    TrivialInstance,

    #[error("nonexistence construction unavailable: minimal direction value {value:e} is not below any requested epsilon")]
    ConstructionUnavailable { value: f64 },

    #[error("insufficient quadrature resolution: {0}")]
    InsufficientQuadrature(String),

    #[error("certificate search box exhausted after {doublings} doublings")]
    SearchBoxExhausted { doublings: usize },

    #[error("model specification error: {0}")]
    Model(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dim(what: &'static str, expected: usize, found: usize) -> Self {
        Error::DimensionMismatch {
            what,
            expected,
            found,
        }
    }
}
