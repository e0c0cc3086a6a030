use std::fmt;

/// Everything that can go wrong inside the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("matrix is reducible at off-diagonal index {index}; split it into blocks first")]
    Reducible { index: usize },
    #[error("eigenvalues {index} and {} coincide to working precision ({value})", index + 1)]
    Tie { index: usize, value: f64 },
    #[error("no sign change in bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },
    #[error("quadrature did not converge: {what} (error estimate {estimate:e})")]
    Quadrature { what: &'static str, estimate: f64 },
    #[error("unsupported domain: {0}")]
    Unsupported(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("grid too coarse: step {step} exceeds {limit}")]
    CoarseGrid { step: f64, limit: f64 },
    #[error("{construction} sampler: {source}")]
    Sampler { construction: &'static str, source: Box<Error> },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn input(msg: impl fmt::Display) -> Self {
        Error::Input(msg.to_string())
    }

    pub(crate) fn numerical(msg: impl fmt::Display) -> Self {
        Error::Numerical(msg.to_string())
    }

    /// True for errors caused by the caller's arguments rather than the numerics.
    pub fn is_input_error(&self) -> bool {
        match self {
            Error::Sampler { source, .. } => source.is_input_error(),
            e => matches!(e, Error::Input(_) | Error::Unsupported(_) | Error::CoarseGrid { .. }),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, xs: &[f64]) -> Result<()> {
    match xs.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::input(format!("{name}[{i}] is not finite"))),
        None => Ok(()),
    }
}
