use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use minorkit::{extract_dense_minor, mader_reduce, ExtractionParams};
use minorkit_bench::dense_random;

fn reduction(c: &mut Criterion) {
    let g = dense_random(1, 120, 0.2, 20);
    c.bench_function("mader_reduce n=120", |b| b.iter(|| mader_reduce(black_box(&g))));
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("extract_dense_minor");
    group.sample_size(10);
    for (t, n) in [(10usize, 40usize), (30, 100), (60, 200)] {
        let g = dense_random(t as u64, n, 0.3, t);
        let params = ExtractionParams::new(t);
        group.bench_function(format!("t={t} n={n}"), |b| {
            b.iter(|| extract_dense_minor(black_box(&g), &params).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, reduction, pipeline);
criterion_main!(benches);
