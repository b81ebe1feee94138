use std::io;

/// Failures of a CLI command, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Core(#[from] sisz_core::Error),
    /// The command ran but did not produce what was asked for.
    #[error("{0}")]
    Failed(String),
    #[error("CSV output: {0}")]
    Csv(#[from] csv::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILED: i32 = 3;
pub const EXIT_IO: i32 = 4;

impl CliError {
    /// 2 for bad arguments or malformed input, 3 for infeasible or failed
    /// runs (including exceeded budgets), 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        use sisz_core::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } | CliError::Csv(_) => EXIT_IO,
            CliError::Failed(_) => EXIT_FAILED,
            CliError::Core(e) => match e {
                E::Capability(_) | E::Internal(_) => EXIT_FAILED,
                E::Dimension(_)
                | E::RankDeficient
                | E::EntryBound(_)
                | E::Domain(_)
                | E::Precondition(_)
                | E::Parse(_) => EXIT_USAGE,
            },
        }
    }
}
