//! Command-line front end of `qrac-core`: config files, threaded sweeps and
//! CSV/JSON reports.

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod reference;
pub mod report;
pub mod runner;

pub use error::{CliError, Result};
