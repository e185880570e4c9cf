//! Reference tables shipped with the binary.
//!
//! The data file lists each table in the published row order: ascending by
//! faces, then edges, then vertices.

use std::collections::BTreeMap;

use hypermap_core::{BigInt, CoeffTable, Triple};

const DATA: &str = include_str!("../data/reference_tables.txt");

/// One published table with rows in their original order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub darts: u32,
    pub rows: Vec<(Triple, BigInt)>,
}

impl ReferenceTable {
    pub fn to_table(&self) -> CoeffTable {
        CoeffTable::new(self.darts, self.rows.iter().cloned())
    }
}

/// All embedded tables keyed by dart count.
pub fn reference_tables() -> BTreeMap<u32, ReferenceTable> {
    parse(DATA).expect("embedded reference data is well formed")
}

pub fn reference_table(r: u32) -> Option<ReferenceTable> {
    reference_tables().remove(&r)
}

pub fn available_darts() -> Vec<u32> {
    reference_tables().into_keys().collect()
}

/// Parses tables in the embedded data format.
pub fn parse(text: &str) -> Result<BTreeMap<u32, ReferenceTable>, String> {
    let mut out = BTreeMap::new();
    let mut current: Option<ReferenceTable> = None;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(r) = line.strip_prefix("r=") {
            if let Some(t) = current.take() {
                out.insert(t.darts, t);
            }
            let darts = r.parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
            current = Some(ReferenceTable {
                darts,
                rows: Vec::new(),
            });
            continue;
        }
        let table = current
            .as_mut()
            .ok_or_else(|| format!("line {}: row before header", lineno + 1))?;
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [v, e, f, n] = fields[..] else {
            return Err(format!("line {}: expected 4 fields", lineno + 1));
        };
        let num = |s: &str| {
            s.parse::<u32>()
                .map_err(|e| format!("line {}: {e}", lineno + 1))
        };
        let count: BigInt = n.parse().map_err(|e| format!("line {}: {e}", lineno + 1))?;
        table.rows.push(((num(v)?, num(e)?, num(f)?), count));
    }
    if let Some(t) = current {
        out.insert(t.darts, t);
    }
    Ok(out)
}
