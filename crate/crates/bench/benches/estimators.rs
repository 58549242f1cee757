use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hvc_bench::{fixture, SEED};
use hvc_core::{hvc_exact, monte_carlo_hvc, r2_contribution, r2_hvc, PfShape, R2HvcParams};
use std::hint::black_box;

const SHAPE: PfShape = PfShape::LinearTriangular;

fn approximations(c: &mut Criterion) {
    let mut group = c.benchmark_group("approximations");
    for budget in [100, 500, 1000] {
        let f = fixture(SHAPE, 5, 100, budget);
        let params = R2HvcParams::with_directions(f.directions.clone());
        group.bench_with_input(BenchmarkId::new("r2hvc", budget), &budget, |b, _| {
            b.iter(|| r2_hvc(black_box(&f.set), &f.r, &params).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("r2contrib", budget), &budget, |b, _| {
            b.iter(|| r2_contribution(black_box(&f.set), &f.r, &f.directions).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("montecarlo", budget), &budget, |b, &k| {
            b.iter(|| monte_carlo_hvc(black_box(&f.set), &f.r, k, SEED).unwrap())
        });
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.sample_size(10);
    for m in [3, 5, 6] {
        let f = fixture(SHAPE, m, 100, 1);
        group.bench_with_input(BenchmarkId::new("hvc_exact", m), &m, |b, _| {
            b.iter(|| hvc_exact(black_box(&f.set), &f.r).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, approximations, exact);
criterion_main!(benches);
