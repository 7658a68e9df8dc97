//! Command-line front end for `entdyn-core`: experiment files, CSV output,
//! figure presets and a parallel ensemble runner.

pub mod config;
pub mod error;
pub mod format;
pub mod presets;
pub mod report;
pub mod runner;

pub use error::CliError;
