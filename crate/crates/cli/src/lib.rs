//! Reproducible speed-limit experiments behind the `qsl` executable.
//!
//! Every experiment resolves its configuration (flags over config file over
//! defaults), runs, and produces a [`report::Report`] with the resolved
//! config, typed results and a list of pass/fail checks. Units are ħ = 1.

pub mod args;
pub mod config;
pub mod error;
pub mod experiments;
pub mod report;

pub use error::{CliError, Result};
