use thiserror::Error;

/// Errors raised by the algebra, special-function and harness layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    Argument { name: String, reason: String },

    #[error("nested commutator series did not close within depth {depth}")]
    NonConvergence { depth: usize },

    #[error("Baker-Hausdorff factoring not applicable: {0}")]
    NotApplicable(String),

    #[error("singularity: {0}")]
    Singularity(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("accuracy error: {0}")]
    Accuracy(String),

    #[error("ODE solution blew up at t = {t}")]
    BlowUp { t: f64 },

    #[error("unknown identity check `{0}`")]
    Registry(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn arg(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Argument {
            name: name.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
