use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lcanet_bench::{dense_workload, realizable_workload};
use lcanet_core::oracle::naive_plus_closure;
use lcanet_core::{algorithm_real, plus_closure};

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("plus_closure");
    for leaves in [10, 18, 25] {
        let r = dense_workload(leaves, leaves * 80, 7);
        group.bench_with_input(BenchmarkId::new("dense", leaves), &r, |b, r| {
            b.iter(|| plus_closure(r))
        });
        let r = realizable_workload(leaves, 7);
        group.bench_with_input(BenchmarkId::new("realizable", leaves), &r, |b, r| {
            b.iter(|| plus_closure(r))
        });
    }
    group.finish();
}

fn against_naive(c: &mut Criterion) {
    let r = dense_workload(5, 20, 11);
    let mut group = c.benchmark_group("closure_5_leaves");
    group.bench_function("worklist", |b| b.iter(|| plus_closure(&r)));
    group.bench_function("naive", |b| b.iter(|| naive_plus_closure(&r)));
    group.finish();
}

fn realize(c: &mut Criterion) {
    let mut group = c.benchmark_group("algorithm_real");
    group.sample_size(10);
    let r = dense_workload(25, 2000, 1);
    group.bench_function("dense_25_leaves_2000_facts", |b| {
        b.iter(|| algorithm_real(&r))
    });
    let r = realizable_workload(25, 3);
    group.bench_function("realizable_25_leaves", |b| b.iter(|| algorithm_real(&r)));
    group.finish();
}

criterion_group!(benches, closure, against_naive, realize);
criterion_main!(benches);
