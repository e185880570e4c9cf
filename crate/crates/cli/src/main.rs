use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hypermap_cli::commands::{cmd_oracle, cmd_table, cmd_totals, cmd_verify};
use hypermap_cli::config::{resolve_threads, DEFAULT_ORACLE_CUTOFF, THREADS_ENV};
use hypermap_cli::{Format, RunConfig};

/// Exit status for errors raised during computation or I/O.
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hypermap",
    version,
    about = "Count rooted hypermaps by vertices, edges and faces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads [default: $HYPERMAP_THREADS, else hardware parallelism]
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// F-cache file
    #[arg(long, global = true, default_value = ".fcache")]
    cache: PathBuf,

    /// Neither read nor write the F-cache
    #[arg(long, global = true)]
    no_cache: bool,

    /// Suppress progress and timing on stderr
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute and print the coefficient table for r darts
    Table {
        #[command(flatten)]
        darts: Darts,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Compare the computed table with the embedded reference data
    Verify {
        #[command(flatten)]
        darts: Darts,
        /// Reference tables to compare against instead of the embedded ones
        #[arg(long, value_name = "FILE")]
        reference: Option<PathBuf>,
    },
    /// Compare the computed table with brute-force enumeration
    Oracle {
        #[command(flatten)]
        darts: Darts,
        /// Run even when r exceeds the cutoff
        #[arg(long)]
        force: bool,
        /// Largest r accepted without --force
        #[arg(long, default_value_t = DEFAULT_ORACLE_CUTOFF)]
        cutoff: u32,
    },
    /// Print the total number of rooted hypermaps for r = 1..=max
    Totals {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
    },
}

#[derive(Args)]
struct Darts {
    /// Number of darts
    #[arg(long = "darts", short = 'r', value_parser = clap::value_parser!(u32).range(1..))]
    r: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Walsh,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Walsh => Format::Walsh,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = resolve_threads(cli.threads, std::env::var(THREADS_ENV).ok().as_deref());
    let config = |r: u32| RunConfig {
        darts: r,
        threads,
        cache: (!cli.no_cache).then(|| cli.cache.clone()),
        quiet: cli.quiet,
        ..RunConfig::new(r)
    };

    let run = || {
        let mut out = io::BufWriter::new(io::stdout().lock());
        let mut log = io::stderr();
        let code = match &cli.command {
            Command::Table { darts, format } => {
                let cfg = RunConfig {
                    format: (*format).into(),
                    ..config(darts.r)
                };
                cmd_table(&cfg, &mut out, &mut log)
            }
            Command::Verify { darts, reference } => {
                let cfg = RunConfig {
                    reference: reference.clone(),
                    ..config(darts.r)
                };
                cmd_verify(&cfg, &mut out, &mut log)
            }
            Command::Oracle {
                darts,
                force,
                cutoff,
            } => {
                let cfg = RunConfig {
                    force: *force,
                    oracle_cutoff: *cutoff,
                    ..config(darts.r)
                };
                cmd_oracle(&cfg, &mut out, &mut log)
            }
            Command::Totals { max } => cmd_totals(*max, &mut out),
        }?;
        out.flush()?;
        Ok::<u8, anyhow::Error>(code)
    };
    let result = in_pool(threads, run);
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

#[cfg(feature = "parallel")]
fn in_pool<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<R>(_threads: usize, f: impl FnOnce() -> R) -> R {
    f()
}
