use thiserror::Error;

/// Errors raised by the algorithms in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Addition of exact scalars whose irrational parts differ.
    #[error("cannot add values with different irrational parts ({lhs} vs {rhs})")]
    IncompatibleBasis { lhs: String, rhs: String },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// Input lies (numerically) off the generic locus assumed by a solver.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    /// A Monte Carlo trial produced a candidate zero that neither converged
    /// nor could be rejected.
    #[error("unresolved zero: {0}")]
    UnresolvedZero(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
