//! Batch front end: reads a TOML job, runs it with `oqf-core` and writes CSV.

// Checks written as `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod run;

pub use config::JobConfig;
pub use error::CliError;
pub use run::{execute, run, Command, Options, Report, Table};
