use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use diamaug_bench::{general_fixture, metric_fixture};
use diamaug_core::{decompose, feasible, induce_instance, solve, solve_general, solve_tree, solve_tree_approx};

fn metric(c: &mut Criterion) {
    let mut group = c.benchmark_group("metric");
    group.sample_size(10);
    for n in [1_000, 10_000, 100_000] {
        let (tree, cost) = metric_fixture(n, 1);
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |b, _| {
            b.iter(|| solve_tree(black_box(&tree), &cost).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("approx_0.5", n), &n, |b, _| {
            b.iter(|| solve_tree_approx(black_box(&tree), &cost, 0.5).unwrap())
        });
    }
    group.finish();
}

fn decision(c: &mut Criterion) {
    let mut group = c.benchmark_group("decision");
    for n in [1_000, 100_000] {
        let (tree, cost) = metric_fixture(n, 2);
        let dec = decompose(&tree);
        let inst = induce_instance(&tree, &dec, &cost).unwrap();
        let lambda = solve(&inst).diameter;
        group.bench_with_input(BenchmarkId::from_parameter(n), &lambda, |b, &lambda| {
            b.iter(|| feasible(black_box(&inst), lambda))
        });
    }
    group.finish();
}

fn general(c: &mut Criterion) {
    let mut group = c.benchmark_group("general");
    group.sample_size(10);
    for n in [250, 1_000] {
        let (tree, cost) = general_fixture(n, 3);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| solve_general(black_box(&tree), &cost).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, metric, decision, general);
criterion_main!(benches);
