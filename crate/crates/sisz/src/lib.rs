//! Command-line harness, file formats and reports for `sisz-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod report;
pub mod summary;

pub use cli::run_with_io;
pub use error::CliError;
