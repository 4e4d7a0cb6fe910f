//! Command-line front end for `bernlike-core`.
//!
//! Every subcommand renders either a CSV table or a JSON document and maps
//! its verdict onto the exit-code contract: 0 pass, 1 check failed or
//! numeric fault, 2 usage error.

// `!(x > a)` forms deliberately reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use commands::{run, Outcome};
pub use config::{Cli, Command};
pub use error::CliError;
