use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypermap_core::fseries::WeightTable;
use hypermap_core::oracle::brute_force_table;
use hypermap_core::{compute_table, Exec, FGrid};

fn modes() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ]
}

fn weight_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("weight_table_r13");
    for (name, exec) in modes() {
        for (m, n) in [(4, 6), (6, 9)] {
            g.bench_with_input(
                BenchmarkId::new(name, format!("{m}x{n}")),
                &(m, n),
                |b, &(m, n)| b.iter(|| black_box(WeightTable::build(m, n, 13, exec))),
            );
        }
    }
    g.finish();
}

fn full_table(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_table");
    g.sample_size(10);
    for (name, exec) in modes() {
        for r in [8, 11] {
            g.bench_with_input(BenchmarkId::new(name, r), &r, |b, &r| {
                b.iter(|| black_box(compute_table(r, &FGrid::new(r), exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn brute_force(c: &mut Criterion) {
    let mut g = c.benchmark_group("brute_force_r6");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(name, |b| {
            b.iter(|| black_box(brute_force_table(6, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, weight_table, full_table, brute_force);
criterion_main!(benches);
