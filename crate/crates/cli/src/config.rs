//! Run configuration shared by every subcommand.

use std::path::PathBuf;

use hypermap_core::Exec;

/// Environment variable consulted when `--threads` is not given.
pub const THREADS_ENV: &str = "HYPERMAP_THREADS";

/// Largest `r` the oracle subcommand accepts without `--force`.
pub const DEFAULT_ORACLE_CUTOFF: u32 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Csv,
    Json,
    Walsh,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub darts: u32,
    pub format: Format,
    pub threads: usize,
    /// `None` disables the F-cache.
    pub cache: Option<PathBuf>,
    pub oracle_cutoff: u32,
    /// Reference data for `verify` in place of the embedded tables.
    pub reference: Option<PathBuf>,
    pub force: bool,
    pub quiet: bool,
}

impl RunConfig {
    pub fn new(darts: u32) -> Self {
        RunConfig {
            darts,
            format: Format::default(),
            threads: 1,
            cache: None,
            oracle_cutoff: DEFAULT_ORACLE_CUTOFF,
            reference: None,
            force: false,
            quiet: true,
        }
    }

    pub fn exec(&self) -> Exec {
        if self.threads > 1 {
            Exec::default()
        } else {
            Exec::Sequential
        }
    }
}

/// Worker count: the flag wins, then the environment, then the hardware.
///
/// Unparseable or zero environment values are ignored.
pub fn resolve_threads(flag: Option<usize>, env: Option<&str>) -> usize {
    if let Some(n) = flag {
        return n.max(1);
    }
    if let Some(n) = env.and_then(|s| s.trim().parse::<usize>().ok()) {
        if n > 0 {
            return n;
        }
    }
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
