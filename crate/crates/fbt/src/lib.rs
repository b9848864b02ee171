//! Command-line front end and acceptance suite for `fbt-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod spec;
pub mod suite;

pub use cli::run;
pub use config::RunConfig;
pub use error::CliError;
