//! Command-line front end, result records, caching and parallel drivers for
//! [`cyclestat_core`].

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod output;
pub mod parallel;
pub mod record;

pub use cli::{Cli, Command, RunConfig};
pub use error::CliError;
pub use record::{Payload, ResultRecord};
