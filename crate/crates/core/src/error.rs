use thiserror::Error;

use crate::params::PoleLine;

/// Errors raised by the solvers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The energy sits within the exclusion margin of a pole.
    #[error("energy {energy} lies within the pole margin of {line}")]
    PoleProximity { line: PoleLine, energy: f64 },

    /// A series did not settle before the hard term cap.
    #[error("series did not converge after {terms} terms")]
    Unconverged { terms: usize },

    /// The two constraint routes disagree at a candidate crossing.
    #[error(
        "constraint routes disagree at N={n}, M={m}, g={g}: |f_N|={residual_f:e}, |c_M|={residual_c:e}"
    )]
    Inconsistent {
        n: usize,
        m: usize,
        g: f64,
        residual_f: f64,
        residual_c: f64,
    },

    /// The requested case has no implementation (e.g. a closed form that does not exist).
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// The eigensolver failed to converge.
    #[error("eigensolver failed: {0}")]
    Solver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
