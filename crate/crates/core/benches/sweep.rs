use std::f64::consts::TAU;

use cone_deform::sweep::{sweep_parallel, sweep_sequential};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

pub fn sweep_backends(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    for steps in [256usize, 4096, 65536] {
        group.bench_with_input(BenchmarkId::new("sequential", steps), &steps, |b, &n| {
            b.iter(|| sweep_sequential(0.0, TAU, n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", steps), &steps, |b, &n| {
            b.iter(|| sweep_parallel(0.0, TAU, n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweep_backends);
criterion_main!(benches);
