use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function} did not converge: {detail}")]
    NonConvergence {
        function: &'static str,
        detail: String,
    },

    #[error("precondition violated in {function}: {detail}")]
    Precondition {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("P-symbol error: {0}")]
    PSymbol(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid lattice run: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

pub(crate) fn pole(function: &'static str, at: impl std::fmt::Display) -> Error {
    Error::Pole {
        function,
        at: at.to_string(),
    }
}
