//! Error type shared by every module in the crate.

use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Body indices in messages are 1-based, matching the labelling used in all
/// reports and in the CSV output.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument violated a precondition (wrong length, out of range,
    /// non-finite, non-positive mass, ...).
    #[error("invalid input: {0}")]
    Domain(String),

    /// Two bodies are closer than the coincidence threshold, so the
    /// configuration is geometrically invalid.
    #[error("bodies {body_a} and {body_b} coincide (distance {distance:e})")]
    Coincident {
        body_a: usize,
        body_b: usize,
        distance: f64,
    },

    /// The requested parameters admit no solution with positive masses.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// An iterative solver ran out of iterations or stalled.
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    /// A numerical invariant that should hold by construction failed.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
