//! Config-driven batch runs over `ptxform-core`: TOML in, CSV tables and a
//! versioned `report.json` out.

pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod report;

pub use commands::{run, Command, RunOptions};
pub use config::RunConfig;
pub use error::{CliError, Result};
