//! Error type shared across the crate.
//!
//! Programmer errors (context mismatches, division by zero) panic via
//! assertions; everything a caller can plausibly recover from or report —
//! bad parameters, parse failures, exceeded guards, exhausted search
//! budgets, and failed verification of a claimed invariant — comes back
//! as an [`Error`].

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong short of a programmer error.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// `p` failed the trial-division primality check.
    #[error("not a prime: {0}")]
    NotPrime(u64),

    /// `q` is not of the form p^e.
    #[error("not a prime power: {0}")]
    NotPrimePower(u64),

    /// Requested field size exceeds the configured bound.
    #[error("field size {size} exceeds configured bound {bound}")]
    SizeBound { size: u64, bound: u64 },

    /// An exhaustive operation was asked to run beyond its guard.
    #[error("guard exceeded: {what} requires {param} <= {bound}, got {got}")]
    GuardExceeded {
        what: &'static str,
        param: &'static str,
        bound: u64,
        got: u64,
    },

    /// A randomized search ran out of candidates.
    #[error("search budget exhausted after {0} candidates")]
    BudgetExhausted(u64),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Bad argument that is neither a parse failure nor a guard.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A basis handed to a linear-system constructor was dependent.
    #[error("dependent basis: rank {rank} < {expected}")]
    DependentBasis { rank: usize, expected: usize },

    /// A verification step contradicted a claimed invariant. This is the
    /// loud-abort path: the message carries enough context to debug.
    #[error("verification failure: {0}")]
    Verification(String),
}
