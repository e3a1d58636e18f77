use thiserror::Error;

/// Everything that can go wrong inside the engine.
///
/// Variants split into two families that the command-line front end maps to
/// different exit codes: input problems ([`Error::is_input`]) and numerical
/// failures.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{key}`: {constraint}")]
    InvalidParameter { key: String, constraint: String },

    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("non-physical covariance matrix: {0}")]
    NonPhysical(String),

    #[error("covariance matrix is ill-conditioned (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(
        "quadrature did not converge on [{lower:.6e}, {upper:.6e}]: estimate {estimate:.6e}, \
         error {error:.3e} > tolerance {tolerance:.3e} after {evaluations} evaluations"
    )]
    Quadrature {
        lower: f64,
        upper: f64,
        estimate: f64,
        error: f64,
        tolerance: f64,
        evaluations: usize,
    },

    #[error("threshold undefined: prior too tight or Υ too small (argument {argument:.6e} ≥ 1/e)")]
    ThresholdUndefined { argument: f64 },

    #[error("Cramér-Rao bound undefined at angle {angle} rad: fundamental-mode occupancy is {occupancy}")]
    SingularCrb { angle: f64, occupancy: f64 },

    #[error("beamsplitter cascade exhausted at stage {stage}: all light already sorted")]
    CascadeExhausted { stage: usize },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn param(key: &str, constraint: impl Into<String>) -> Self {
        Error::InvalidParameter {
            key: key.to_string(),
            constraint: constraint.into(),
        }
    }

    pub fn config(key: &str, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// True for errors caused by bad user input rather than numerics.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. } | Error::Config { .. } | Error::Io { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
