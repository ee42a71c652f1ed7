use criterion::{criterion_group, criterion_main, Criterion};

use pspectra::datasets::{table1_cell, table1_cells};
use pspectra::sweep::map_sequential;

const TOL: f64 = 1e-8;

fn table_sweep(c: &mut Criterion) {
    let cells = table1_cells();
    let mut group = c.benchmark_group("table1");
    group.sample_size(10);
    group.bench_function("sequential", |b| b.iter(|| map_sequential(&cells, |&s| table1_cell(s, TOL).unwrap())));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| pspectra::sweep::map_parallel(&cells, |&s| table1_cell(s, TOL).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, table_sweep);
criterion_main!(benches);
