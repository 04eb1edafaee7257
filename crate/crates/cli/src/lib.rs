//! Command-line front end of the Poncelet laboratory: pair files, run
//! configuration, JSON run reports and SVG figures.

pub mod config;
pub mod error;
pub mod report;
pub mod suite;
pub mod svg;

pub use config::{Command, PairSource, RunConfig};
pub use error::{CliError, CliResult};
pub use report::RunReport;
pub use suite::run_suite;
