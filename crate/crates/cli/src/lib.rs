//! Library half of the `hurwitz` binary: argument model and command execution.

pub mod commands;
pub mod config;

pub use commands::{run, CliError, Outcome};
pub use config::RunConfig;
