use thiserror::Error;

/// Errors raised by the p-adic machinery and the locus computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The available precision cannot certify the requested answer.
    ///
    /// `disc` names the residue disc (as an integer residue mod p) when the
    /// failure happened while processing one.
    #[error("precision error{}: {reason}", disc.map(|d| format!(" on residue disc {d}")).unwrap_or_default())]
    Precision { reason: String, disc: Option<u64> },

    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// No Steinberg decomposition was found among the candidates allowed by the bound.
    #[error("no Steinberg decomposition of [{l}]⊗[{q}] avoiding {p} with support bound {bound} and height {height}")]
    InsufficientBound {
        l: u64,
        q: u64,
        p: u64,
        bound: u64,
        height: u64,
    },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// Invalid combination of parameters.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    pub fn precision(reason: impl Into<String>) -> Self {
        Error::Precision {
            reason: reason.into(),
            disc: None,
        }
    }

    /// Attaches a residue disc to a precision error; other errors pass through.
    pub fn on_disc(self, residue: u64) -> Self {
        match self {
            Error::Precision { reason, disc: None } => Error::Precision {
                reason,
                disc: Some(residue),
            },
            other => other,
        }
    }

    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Precision { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
