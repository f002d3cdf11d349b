//! Scenario configurations, runners and reports behind the `besselsub`
//! command-line tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod presets;
pub mod report;
pub mod scenarios;

pub use error::CliError;
