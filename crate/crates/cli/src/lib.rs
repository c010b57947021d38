//! File formats, reports and commands behind the `mmes` binary.

pub mod commands;
pub mod error;
pub mod io;
pub mod numfmt;
pub mod report;
pub mod search;
pub mod statefile;
pub mod verify;

pub use error::{CliError, CliResult};
