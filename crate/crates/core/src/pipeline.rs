//! End-to-end computation of one coefficient table.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fseries::FGrid;
use crate::henum::h_series;
use crate::interpolate::{interpolate_table_counted, sorted_triples, CoeffTable};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableStats {
    pub darts: u32,
    /// Distinct sorted points at which `H_r` was evaluated.
    pub points_evaluated: usize,
    /// `(m, n)` weight tables enumerated during this call.
    pub weight_tables_built: usize,
    /// Points whose `F` coefficients were computed rather than found cached.
    pub f_points_computed: usize,
    /// Nonvanishing composition terms visited.
    pub terms_visited: u64,
    pub elapsed: Duration,
}

/// Computes the table for `r` darts.
///
/// The `F` series at every sorted point `m ≤ n ≤ λ` is filled first (the
/// smallest argument plays `m`, keeping the compositions short), then `H_r`
/// is evaluated pointwise and interpolated.
pub fn compute_table(r: u32, fgrid: &FGrid, exec: Exec) -> Result<(CoeffTable, TableStats)> {
    if r == 0 || r > fgrid.max_darts() {
        return Err(Error::Unsupported(format!(
            "dart count {r} outside 1..={}",
            fgrid.max_darts()
        )));
    }
    let start = Instant::now();
    let before = fgrid.stats();
    fgrid.prefill(&sorted_triples(r), exec);
    let evaluator = |m: u32, n: u32, l: u32| {
        let f = fgrid.series(m, n, l);
        let h = h_series(&f[..=r as usize], m, n, l)?;
        Ok(h[r as usize - 1].clone())
    };
    let interpolation = interpolate_table_counted(r, evaluator, exec)?;
    let after = fgrid.stats();
    let stats = TableStats {
        darts: r,
        points_evaluated: interpolation.evaluations,
        weight_tables_built: after.tables_built - before.tables_built,
        f_points_computed: after.points_computed - before.points_computed,
        terms_visited: after.terms_visited - before.terms_visited,
        elapsed: start.elapsed(),
    };
    Ok((interpolation.table, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::BigInt;

    #[test]
    fn r4_table() {
        let grid = FGrid::new(4);
        let (table, stats) = compute_table(4, &grid, Exec::default()).unwrap();
        let want = CoeffTable::new(
            4,
            [
                ((1, 1, 2), 5),
                ((2, 2, 2), 17),
                ((1, 2, 3), 6),
                ((1, 1, 4), 1),
            ]
            .map(|(t, c)| (t, BigInt::from(c))),
        );
        assert_eq!(table, want);
        assert_eq!(stats.points_evaluated, 20);
        // pairs (m, n) with m ≤ n ≤ 4
        assert_eq!(stats.weight_tables_built, 10);
    }

    #[test]
    fn rejects_out_of_range() {
        let grid = FGrid::new(3);
        assert!(compute_table(0, &grid, Exec::Sequential).is_err());
        assert!(compute_table(4, &grid, Exec::Sequential).is_err());
    }
}
