use thiserror::Error;

/// Errors raised by the simulator and bound calculators.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension {dim} exceeds budget {budget}")]
    Resource { dim: u128, budget: usize },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("stationary state: zero energy above ground and zero spread, no finite bound")]
    StationaryState,

    #[error("no orthogonality: Q = {0} is not twice an odd number, P(t) never reaches zero")]
    NoOrthogonality(usize),

    #[error("non-finite value {value} at t = {t}")]
    Numeric { t: f64, value: f64 },
}

impl Error {
    /// Stable machine-readable kind, used in error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Shape(_) => "shape",
            Error::Validation(_) => "validation",
            Error::NotPsd(_) => "not_psd",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::Resource { .. } => "resource",
            Error::Domain(_) => "domain",
            Error::StationaryState => "stationary_state",
            Error::NoOrthogonality(_) => "no_orthogonality",
            Error::Numeric { .. } => "numeric",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
