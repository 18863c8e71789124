//! Command-line driver for the cubic-moments toolkit: configuration, the
//! JSONL L-value cache, report emission and the invariant suites.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod literal;
pub mod report;
pub mod verify;

pub use error::{CliError, Result};
