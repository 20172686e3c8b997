//! Document formats and subcommands behind the `filiform` binary.

pub mod commands;
pub mod doc;
pub mod error;

pub use error::CliError;
