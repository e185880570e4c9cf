//! Subcommand bodies. Each returns the process exit status; emission goes to
//! `out` and diagnostics to `log`.

use std::fmt;
use std::io::Write;

use anyhow::{Context, Result};
use hypermap_core::henum::totals;
use hypermap_core::oracle::{brute_force_table, MAX_BRUTE_FORCE_DARTS};
use hypermap_core::{compute_table, BigInt, CoeffTable, FGrid, TableStats, Triple};

use crate::cache;
use crate::config::RunConfig;
use crate::format::write_table;
use crate::reference::{parse, reference_tables};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_REFUSED: u8 = 2;

/// First row at which two tables disagree, in lexicographic key order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub key: Triple,
    pub computed: Option<BigInt>,
    pub expected: Option<BigInt>,
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (v, e, fa) = self.key;
        let show = |x: &Option<BigInt>| x.as_ref().map_or("absent".to_string(), |c| c.to_string());
        write!(
            f,
            "({v},{e},{fa}): computed {}, expected {}",
            show(&self.computed),
            show(&self.expected)
        )
    }
}

/// Compares canonical entries, so a row present on one side only counts as
/// a difference.
pub fn first_difference(computed: &CoeffTable, expected: &CoeffTable) -> Option<Difference> {
    let a: std::collections::BTreeMap<_, _> = computed.entries().collect();
    let b: std::collections::BTreeMap<_, _> = expected.entries().collect();
    let mut keys: Vec<&Triple> = a.keys().chain(b.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let (x, y) = (a.get(k).copied(), b.get(k).copied());
        (x != y).then(|| Difference {
            key: *k,
            computed: x.cloned(),
            expected: y.cloned(),
        })
    })
}

/// Computes the table for `cfg.darts`, reading and updating the F-cache.
pub fn compute(cfg: &RunConfig, log: &mut dyn Write) -> Result<CoeffTable> {
    let grid = FGrid::new(cfg.darts);
    if let Some(path) = &cfg.cache {
        let loaded = cache::load(path, &grid);
        if !cfg.quiet && loaded > 0 {
            writeln!(log, "cache: loaded {loaded} values from {}", path.display())?;
        }
    }
    let (table, stats) = compute_table(cfg.darts, &grid, cfg.exec())?;
    if let Some(path) = &cfg.cache {
        if stats.f_points_computed > 0 {
            cache::save(path, &grid)
                .with_context(|| format!("writing cache {}", path.display()))?;
        }
    }
    if !cfg.quiet {
        report(log, cfg, &stats)?;
    }
    Ok(table)
}

fn report(log: &mut dyn Write, cfg: &RunConfig, stats: &TableStats) -> std::io::Result<()> {
    writeln!(
        log,
        "r={}: {} points, {} new F points, {} weight tables, {} terms, {} workers, {:.3}s",
        stats.darts,
        stats.points_evaluated,
        stats.f_points_computed,
        stats.weight_tables_built,
        stats.terms_visited,
        cfg.threads,
        stats.elapsed.as_secs_f64()
    )
}

pub fn cmd_table(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<u8> {
    let table = compute(cfg, log)?;
    write_table(out, &table, cfg.format)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<u8> {
    let mut tables = match &cfg.reference {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?
        }
        None => reference_tables(),
    };
    let Some(reference) = tables.remove(&cfg.darts) else {
        let available: Vec<u32> = tables.keys().copied().collect();
        writeln!(
            log,
            "no reference table for r={}; available: {available:?}",
            cfg.darts
        )?;
        return Ok(EXIT_REFUSED);
    };
    let table = compute(cfg, log)?;
    match first_difference(&table, &reference.to_table()) {
        None => {
            writeln!(out, "r={}: {} entries match", cfg.darts, table.len())?;
            Ok(EXIT_OK)
        }
        Some(d) => {
            writeln!(out, "r={}: mismatch at {d}", cfg.darts)?;
            Ok(EXIT_MISMATCH)
        }
    }
}

pub fn cmd_oracle(cfg: &RunConfig, out: &mut dyn Write, log: &mut dyn Write) -> Result<u8> {
    if cfg.darts > cfg.oracle_cutoff && !cfg.force {
        writeln!(
            log,
            "r={} exceeds the oracle cutoff {}; pass --force to run anyway",
            cfg.darts, cfg.oracle_cutoff
        )?;
        return Ok(EXIT_REFUSED);
    }
    if cfg.darts > MAX_BRUTE_FORCE_DARTS {
        writeln!(
            log,
            "brute force supports at most {MAX_BRUTE_FORCE_DARTS} darts"
        )?;
        return Ok(EXIT_REFUSED);
    }
    let brute = brute_force_table(cfg.darts, cfg.exec())?;
    let table = compute(cfg, log)?;
    match first_difference(&table, &brute) {
        None => {
            writeln!(
                out,
                "r={}: interpolation matches brute force ({} entries)",
                cfg.darts,
                table.len()
            )?;
            Ok(EXIT_OK)
        }
        Some(d) => {
            writeln!(out, "r={}: mismatch at {d}", cfg.darts)?;
            Ok(EXIT_MISMATCH)
        }
    }
}

pub fn cmd_totals(max: u32, out: &mut dyn Write) -> Result<u8> {
    for t in totals(max) {
        writeln!(out, "{t}")?;
    }
    Ok(EXIT_OK)
}
