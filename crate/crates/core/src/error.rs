use alloc::string::String;

/// Errors raised by the lattice, sampling, solver and reduction routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("entry bound violated: {0}")]
    EntryBound(String),
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// The requested computation exceeds a configured budget or ceiling.
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
