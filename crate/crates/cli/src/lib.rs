//! Library side of the `hypermap` command-line tool.

pub mod cache;
pub mod commands;
pub mod config;
pub mod format;
pub mod reference;

pub use config::{Format, RunConfig};
