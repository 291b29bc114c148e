//! Command-line front end: ring files, JSON reports and prime sweeps.

pub mod args;
pub mod commands;
pub mod report;
pub mod ringfile;
pub mod sweep;

pub use args::{Cli, Command};
pub use commands::{run, run_json, Outcome};
