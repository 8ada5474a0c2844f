use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hochkit_bench::operators;
use hochkit_core::{
    cohomology_dims, gerstenhaber, hochschild_delta, partial_compose, split_cocycle, MultiDiffOp,
    Truncation,
};
use std::hint::black_box;

fn delta(c: &mut Criterion) {
    let mut group = c.benchmark_group("hochschild_delta");
    for (m, n, r) in [(1, 2, 2), (2, 2, 2), (3, 2, 3), (2, 3, 2)] {
        let ops = operators(1, m, n, r, 8);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}_r{r}")),
            &ops,
            |b, ops| {
                b.iter(|| {
                    ops.iter()
                        .map(|f| hochschild_delta(black_box(f)))
                        .collect::<Vec<_>>()
                })
            },
        );
    }
    group.finish();
}

fn composition(c: &mut Criterion) {
    let f = operators(2, 2, 2, 3, 1).pop().unwrap();
    let g = operators(3, 2, 2, 3, 1).pop().unwrap();
    c.bench_function("partial_compose m2 r3", |b| {
        b.iter(|| partial_compose(black_box(&f), 1, black_box(&g)).unwrap())
    });
    c.bench_function("gerstenhaber m2 r3", |b| {
        b.iter(|| gerstenhaber(black_box(&f), black_box(&g)).unwrap())
    });
}

fn windows(c: &mut Criterion) {
    let mut group = c.benchmark_group("cohomology_window");
    group.sample_size(10);
    group.bench_function("m1 r2 d2 n3", |b| {
        b.iter(|| cohomology_dims(1, 2, 2, 3, 2).unwrap())
    });
    group.bench_function("m2 r2 d2 n2", |b| {
        b.iter(|| cohomology_dims(2, 2, 2, 2, 2).unwrap())
    });
    group.finish();

    let e = operators(4, 2, 1, 2, 1).pop().unwrap();
    let d: MultiDiffOp = hochschild_delta(&e);
    let t = Truncation::new(2, 2, 2, 2);
    c.bench_function("split_cocycle m2 n2", |b| {
        b.iter(|| split_cocycle(black_box(&d), &t, 2).unwrap())
    });
}

criterion_group!(benches, delta, composition, windows);
criterion_main!(benches);
