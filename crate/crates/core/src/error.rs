use thiserror::Error;

/// Errors produced anywhere in the model, solver or experiment layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where a formula is defined.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },

    /// A non-finite value appeared while evaluating a nodal field.
    #[error("non-finite value in {what} at node {node}")]
    Numeric { what: &'static str, node: usize },

    /// The staggered p/g iteration did not settle within the sweep cap.
    #[error("staggered iteration did not converge at t* = {t_star} after {iterations} sweeps (residual {residual:e})")]
    NonConvergence {
        t_star: f64,
        iterations: usize,
        residual: f64,
    },

    /// The boundary stress balance has no sign change in the search bracket.
    #[error("boundary root search failed: {0}")]
    Boundary(String),

    /// A configuration value is missing or violates an invariant.
    #[error("invalid `{field}`: {detail}")]
    Config { field: String, detail: String },

    /// Anything raised while reading or writing files.
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    pub fn config(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            detail: detail.into(),
        }
    }

    /// Process exit code category used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::Io(_) => 2,
            Error::Domain { .. } | Error::Numeric { .. } | Error::Boundary(_) => 3,
            Error::NonConvergence { .. } => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
