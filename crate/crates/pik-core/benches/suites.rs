use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use pik_core::catalytic::catalysis_suite;
use pik_core::semantics::check_coherence;
use pik_core::staton::{completeness_suite, staton_suite};
use pik_core::{Exec, Precision};

fn modes() -> [(&'static str, Exec); 2] {
    [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)]
}

fn coherence(c: &mut Criterion) {
    let k = Precision::new(3).unwrap();
    let mut g = c.benchmark_group("coherence");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(name, 64), &exec, |b, &exec| {
            b.iter(|| check_coherence(k, 64, 0, exec).unwrap())
        });
    }
    g.finish();
}

fn catalysis(c: &mut Criterion) {
    let k = Precision::new(4).unwrap();
    let mut g = c.benchmark_group("catalysis");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(name, 32), &exec, |b, &exec| {
            b.iter(|| catalysis_suite(k, 32, 0, 8, exec).unwrap())
        });
    }
    g.finish();
}

fn channels(c: &mut Criterion) {
    let k = Precision::new(2).unwrap();
    let mut g = c.benchmark_group("channels");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_with_input(BenchmarkId::new(format!("staton/{name}"), 8), &exec, |b, &exec| {
            b.iter(|| staton_suite(k, 8, 0, exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new(format!("completeness/{name}"), 32), &exec, |b, &exec| {
            b.iter(|| completeness_suite(k, 32, 0, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, coherence, catalysis, channels);
criterion_main!(benches);
