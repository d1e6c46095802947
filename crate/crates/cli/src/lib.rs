//! Command-line front end: argument parsing, command dispatch and the
//! acceptance checks behind `selftest`.

pub mod checks;
mod commands;

pub use commands::{run, Cli, Command};
