use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsuperpose::{lower, run, scan, synthesize};
use qsuperpose_bench::{lowered_worst_case, worst_case};

fn bench_synthesize_lower(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize_lower");
    for n in [8u32, 16, 32, 48] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &worst_case(n), |b, &big_n| {
            b.iter(|| lower(&synthesize(black_box(big_n)).unwrap()))
        });
    }
    group.finish();
}

fn bench_simulate(c: &mut Criterion) {
    let mut group = c.benchmark_group("simulate_lowered");
    group.sample_size(10);
    for n in [12u32, 16, 20] {
        let circuit = lowered_worst_case(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &circuit, |b, circ| {
            b.iter(|| run(black_box(circ)).unwrap())
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("n_max_16", |b| b.iter(|| scan(black_box(16)).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_synthesize_lower, bench_simulate, bench_scan);
criterion_main!(benches);
