//! Table emitters.

use std::io::{self, Write};

use serde::Serialize;

use crate::config::Format;
use hypermap_core::CoeffTable;

pub fn write_table<W: Write + ?Sized>(
    out: &mut W,
    table: &CoeffTable,
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, table),
        Format::Json => write_json(out, table),
        Format::Walsh => write_walsh(out, table),
    }
}

/// Header `v,e,f,count`, then canonical rows in lexicographic order.
pub fn write_csv<W: Write + ?Sized>(out: &mut W, table: &CoeffTable) -> io::Result<()> {
    writeln!(out, "v,e,f,count")?;
    for (&(v, e, f), c) in table.entries() {
        writeln!(out, "{v},{e},{f},{c}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonEntry {
    v: u32,
    e: u32,
    f: u32,
    count: String,
}

#[derive(Serialize)]
struct JsonTable {
    darts: u32,
    entries: Vec<JsonEntry>,
    total: String,
}

/// Counts are decimal strings; they overflow 64 bits for larger `r`.
pub fn write_json<W: Write + ?Sized>(out: &mut W, table: &CoeffTable) -> io::Result<()> {
    let doc = JsonTable {
        darts: table.darts(),
        entries: table
            .entries()
            .map(|(&(v, e, f), c)| JsonEntry {
                v,
                e,
                f,
                count: c.to_string(),
            })
            .collect(),
        total: table.total().to_string(),
    };
    serde_json::to_writer(&mut *out, &doc)?;
    writeln!(out)
}

/// Fixed-width columns in the published layout, rows ordered by `f`, then
/// `e`, then `v`.
pub fn write_walsh<W: Write + ?Sized>(out: &mut W, table: &CoeffTable) -> io::Result<()> {
    let mut rows: Vec<_> = table.entries().map(|(&t, c)| (t, c.to_string())).collect();
    rows.sort_by_key(|&((v, e, f), _)| (f, e, v));
    let width = rows.iter().map(|(_, c)| c.len()).max().unwrap_or(0).max(1);
    writeln!(out, "r={}:", table.darts())?;
    writeln!(out, "{:>3} {:>3} {:>3} | {:>width$}", "v", "e", "f", "N")?;
    writeln!(out, "{}+{}", "-".repeat(12), "-".repeat(width + 1))?;
    for ((v, e, f), c) in rows {
        writeln!(out, "{v:>3} {e:>3} {f:>3} | {c:>width$}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypermap_core::BigInt;

    fn sample() -> CoeffTable {
        CoeffTable::new(
            4,
            [
                ((1, 1, 2), 5),
                ((2, 2, 2), 17),
                ((1, 2, 3), 6),
                ((1, 1, 4), 1),
            ]
            .map(|(t, c)| (t, BigInt::from(c))),
        )
    }

    fn render(format: Format) -> String {
        let mut buf = Vec::new();
        write_table(&mut buf, &sample(), format).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv() {
        assert_eq!(
            render(Format::Csv),
            "v,e,f,count\n1,1,2,5\n1,1,4,1\n1,2,3,6\n2,2,2,17\n"
        );
    }

    #[test]
    fn json() {
        let s = render(Format::Json);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["darts"], 4);
        assert_eq!(v["total"], "71");
        assert_eq!(v["entries"][0]["count"], "5");
        assert_eq!(v["entries"][3]["v"], 2);
        assert_eq!(v["entries"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn walsh() {
        let want = "\
r=4:
  v   e   f |  N
------------+---
  1   1   2 |  5
  2   2   2 | 17
  1   2   3 |  6
  1   1   4 |  1
";
        assert_eq!(render(Format::Walsh), want);
    }
}
