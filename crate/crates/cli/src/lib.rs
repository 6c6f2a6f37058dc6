//! Command-line harness for the authentication simulator: subcommand
//! dispatch, seeded campaign running, and delimited data export.

pub mod campaign;
pub mod commands;
pub mod output;

pub use commands::run_cli;
