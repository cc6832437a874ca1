//! Bench the batch oracle evaluation over the seeded degree-2 corpus,
//! comparing the sequential loop against the rayon lane.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use edval::{corpus, sweep};

fn degree2_oracle(c: &mut Criterion) {
    let classes = corpus::random_degree2_classes(200, corpus::DEGREE2_SEED);
    let mut group = c.benchmark_group("degree2_oracle");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || classes.clone(),
            |cs| sweep::oracle_pairs_sequential(&cs),
            BatchSize::LargeInput,
        )
    });
    #[cfg(feature = "parallel")]
    group.bench_function("rayon", |b| {
        b.iter_batched(
            || classes.clone(),
            |cs| sweep::oracle_pairs_parallel(&cs),
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

fn chain_widths(c: &mut Criterion) {
    let cases: Vec<usize> = (1..=6).collect();
    let mut group = c.benchmark_group("chain_widths");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| {
            sweep::seq_map(&cases, |&r| {
                let class = edval::SymbolClass::chain(r, 2).unwrap();
                edval::width(&class.wedge_valuation())
            })
        })
    });
    group.bench_function("default_lane", |b| {
        b.iter(|| {
            sweep::par_map(&cases, |&r| {
                let class = edval::SymbolClass::chain(r, 2).unwrap();
                edval::width(&class.wedge_valuation())
            })
        })
    });
    group.finish();
}

criterion_group!(benches, degree2_oracle, chain_widths);
criterion_main!(benches);
