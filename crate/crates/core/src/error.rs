use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The QL iteration did not deflate; `residual` is the off-diagonal
    /// magnitude left at the stalled position.
    #[error("eigenvalue iteration did not converge (residual {residual:e})")]
    NoConvergence { residual: f64 },

    /// A computed eigenvalue fell outside the theoretical range by more than
    /// the clamping tolerance.
    #[error("eigenvalue {value} outside [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("at density {density}: {source}")]
    AtDensity {
        density: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_density(self, density: f64) -> Self {
        Error::AtDensity {
            density,
            source: Box::new(self),
        }
    }

    /// True for failures originating in the eigensolver, at any nesting depth.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NoConvergence { .. } | Error::OutOfRange { .. } => true,
            Error::AtDensity { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}
