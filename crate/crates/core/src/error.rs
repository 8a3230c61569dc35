use thiserror::Error;

/// Errors produced by game construction, oracles, LP solves and the solvers built on them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("resource limit exceeded: {what} ({actual} > {limit})")]
    ResourceLimit {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    #[error("no convergence after {iterations} iterations (last pricing gap {gap:.3e})")]
    NonConvergence { iterations: usize, gap: f64 },

    #[error("penalty slacks still positive after {doublings} doublings (max slack {max_slack:.3e})")]
    PenaltyFailure { doublings: usize, max_slack: f64 },

    #[error("undefined ratio: denominator {0}")]
    UndefinedRatio(f64),

    #[error("LP solve failed: {0}")]
    Lp(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
