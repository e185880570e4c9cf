//! One line per acceptance criterion, `PASS` or `FAIL`, with the measured
//! quantity next to its pinned bound. The test fails if any line fails.
//!
//! Run with `cargo test -p hypermap-cli --test acceptance -- --nocapture`.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use hypermap_core::henum::{h_r_point, h_r_special_11m, h_r_special_1mn, totals};
use hypermap_core::oracle::{check_factorization, check_nested_series};
use hypermap_core::{compute_table, Exec, FGrid, HGrid};

const GOLDEN_SMALL_BUDGET: Duration = Duration::from_secs(10);
const GOLDEN_13_BUDGET: Duration = Duration::from_secs(2 * 3600);

fn hypermap(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypermap"))
        .args(args)
        .arg("--no-cache")
        .arg("--quiet")
        .current_dir(cwd)
        .env_remove("HYPERMAP_THREADS")
        .output()
        .unwrap()
}

struct Report {
    failed: Vec<&'static str>,
}

impl Report {
    fn line(&mut self, name: &'static str, ok: bool, detail: String) {
        println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(name);
        }
    }
}

fn partitions(r: u32, max: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    (1..=r.min(max))
        .rev()
        .flat_map(|first| {
            partitions(r - first, first)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

fn golden_small(rep: &mut Report, dir: &Path) {
    let start = Instant::now();
    let codes: Vec<Option<i32>> = (1..=7)
        .map(|r| {
            hypermap(&["verify", "-r", &r.to_string()], dir)
                .status
                .code()
        })
        .collect();
    let elapsed = start.elapsed();
    let ok = codes.iter().all(|&c| c == Some(0)) && elapsed < GOLDEN_SMALL_BUDGET;
    rep.line(
        "golden tables r=1..7",
        ok,
        format!("exit codes {codes:?}, {elapsed:.2?} (budget {GOLDEN_SMALL_BUDGET:?})"),
    );
}

fn golden_13(rep: &mut Report, dir: &Path) {
    let start = Instant::now();
    let verify = hypermap(&["verify", "-r", "13"], dir);
    let elapsed = start.elapsed();
    let csv = String::from_utf8(hypermap(&["table", "-r", "13"], dir).stdout).unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    let spot = ["1,1,1,68428800", "5,5,5,64013222", "1,1,13,1"]
        .iter()
        .all(|want| rows.contains(want));
    let ok = verify.status.code() == Some(0)
        && rows.len() == 57
        && rows.first() == Some(&"1,1,1,68428800")
        && spot
        && elapsed < GOLDEN_13_BUDGET;
    rep.line(
        "golden table r=13",
        ok,
        format!(
            "exit {:?}, {} rows, spot checks {spot}, {elapsed:.2?} (budget {GOLDEN_13_BUDGET:?})",
            verify.status.code(),
            rows.len()
        ),
    );
}

fn intermediate(rep: &mut Report) {
    let grid = FGrid::new(12);
    let sums = totals(12);
    let mut bad = Vec::new();
    for r in 8..=12u32 {
        let table = match compute_table(r, &grid, Exec::default()) {
            Ok((t, _)) => t,
            Err(_) => {
                bad.push(r);
                continue;
            }
        };
        let ok = table.to_poly().is_symmetric()
            && table.invariant_violations().is_empty()
            && table.total() == sums[r as usize - 1];
        if !ok {
            bad.push(r);
        }
    }
    rep.line(
        "intermediate tables r=8..12",
        bad.is_empty(),
        format!(
            "symmetry, Euler bound and parity, nonnegativity, sum = totals; failing r: {bad:?}"
        ),
    );
}

fn oracle(rep: &mut Report, dir: &Path) {
    let mut codes = Vec::new();
    for r in 1..=7 {
        let r = r.to_string();
        let mut args = vec!["oracle", "-r", &r];
        if r == "7" {
            args.push("--force");
        }
        codes.push(hypermap(&args, dir).status.code());
    }
    rep.line(
        "oracle equivalence r=1..7",
        codes.iter().all(|&c| c == Some(0)),
        format!("exit codes {codes:?}"),
    );
}

fn totals_sequence(rep: &mut Report, dir: &Path) {
    let out = String::from_utf8(hypermap(&["totals", "--max", "5"], dir).stdout).unwrap();
    let got: Vec<&str> = out.lines().collect();
    rep.line(
        "totals(5)",
        got == ["1", "3", "13", "71", "461"],
        format!("{got:?}"),
    );
}

fn special_cases(rep: &mut Report) {
    let f = FGrid::new(9);
    let h = HGrid::new();
    let mut checked = 0;
    let mut bad = 0;
    for r in 1..=9 {
        for m in 1..=9 {
            checked += 1;
            if h_r_special_11m(r, m) != h_r_point(r, 1, 1, m, &f, &h).unwrap() {
                bad += 1;
            }
            for n in 1..=9 {
                checked += 1;
                if h_r_special_1mn(r, m, n) != h_r_point(r, 1, m, n, &f, &h).unwrap() {
                    bad += 1;
                }
            }
        }
    }
    rep.line(
        "special-case recursions",
        bad == 0,
        format!("{checked} points, {bad} disagreements"),
    );
}

fn factorization(rep: &mut Report) {
    let (mut checked, mut bad) = (0, 0);
    for r in 1..=5 {
        for p in partitions(r, r) {
            let mut roots = p.clone();
            roots.dedup();
            for root in roots {
                let mut ordered = p.clone();
                let i = ordered.iter().position(|&x| x == root).unwrap();
                let part = ordered.remove(i);
                ordered.insert(0, part);
                for m in 1..=3 {
                    for n in 1..=3 {
                        checked += 1;
                        if !check_factorization(&ordered, m, n) {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    rep.line(
        "factorization identity r<=5",
        bad == 0,
        format!("{checked} cases, {bad} failures"),
    );
}

fn nested_series(rep: &mut Report) {
    let (mut checked, mut bad) = (0, 0);
    for m in 1..=3u32 {
        for lambda in 0..=3 {
            let mut q = vec![0i64; m as usize];
            loop {
                checked += 1;
                if !check_nested_series(m, lambda, &q, 10) {
                    bad += 1;
                }
                let Some(i) = q.iter().position(|&x| x < 3) else {
                    break;
                };
                q[i] += 1;
                q[..i].iter_mut().for_each(|x| *x = 0);
            }
        }
    }
    rep.line(
        "nested series K=10",
        bad == 0,
        format!("{checked} cases, {bad} failures"),
    );
}

fn determinism(rep: &mut Report, dir: &Path) {
    let mut differing = Vec::new();
    for format in ["csv", "json", "walsh"] {
        let run = |threads: &str| {
            hypermap(
                &[
                    "table",
                    "-r",
                    "13",
                    "--format",
                    format,
                    "--threads",
                    threads,
                ],
                dir,
            )
            .stdout
        };
        let one = run("1");
        if one.is_empty() || one != run("8") {
            differing.push(format);
        }
    }
    rep.line(
        "determinism --threads 1 vs 8",
        differing.is_empty(),
        format!("r=13 in csv, json, walsh; differing formats: {differing:?}"),
    );
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let mut rep = Report { failed: Vec::new() };
    golden_small(&mut rep, dir.path());
    golden_13(&mut rep, dir.path());
    intermediate(&mut rep);
    oracle(&mut rep, dir.path());
    totals_sequence(&mut rep, dir.path());
    special_cases(&mut rep);
    factorization(&mut rep);
    nested_series(&mut rep);
    determinism(&mut rep, dir.path());
    assert!(rep.failed.is_empty(), "failed: {:?}", rep.failed);
}
