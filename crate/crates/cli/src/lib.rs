//! Command-line driver for `dlcz-core`: JSON configuration, subcommands,
//! a parallel Monte-Carlo runner and CSV/JSON output.

pub mod cli;
pub mod commands;
pub mod config;
mod error;
pub mod output;
pub mod runner;

pub use error::{CliError, Result};
