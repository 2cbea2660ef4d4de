use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hdepth::{
    check_hilbert_depth, hdepth, sdepth, series_of, ElementOrder, ExponentVector, MonomialIdeal, QuotientModule,
    SearchConfig,
};
use hdepth_bench::{free_plus_maximal, maximal_ideal};

fn with_order(order: ElementOrder) -> SearchConfig {
    SearchConfig {
        element_order: order,
        ..SearchConfig::default()
    }
}

fn maximal_ideal_by_order(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal_ideal");
    for n in 5..=8 {
        let m = maximal_ideal(n);
        for order in [ElementOrder::LexAsc, ElementOrder::LexDesc, ElementOrder::FewestCoversFirst] {
            let cfg = with_order(order);
            group.bench_with_input(BenchmarkId::new(order.name(), n), &m, |b, m| {
                b.iter(|| hdepth(black_box(m), &cfg).unwrap().value)
            });
        }
    }
    group.finish();
}

fn pruning_switches(c: &mut Criterion) {
    let mut group = c.benchmark_group("pruning");
    let m = free_plus_maximal(6, 1);
    let series = series_of(&m, &ExponentVector::splat(6, 1)).unwrap();
    let variants = [
        ("default", SearchConfig::default()),
        (
            "no_counting_bound",
            SearchConfig {
                counting_bound: false,
                ..SearchConfig::default()
            },
        ),
        (
            "memoized",
            SearchConfig {
                memoize_failures: true,
                ..SearchConfig::default()
            },
        ),
    ];
    for (name, cfg) in variants {
        group.bench_function(BenchmarkId::new(name, "refute_s5"), |b| {
            b.iter(|| check_hilbert_depth(black_box(&series), 5, &cfg).unwrap().certificate.is_none())
        });
    }
    group.finish();
}

fn direct_sums(c: &mut Criterion) {
    let mut group = c.benchmark_group("direct_sum");
    let cfg = SearchConfig::default();
    let r2m = free_plus_maximal(4, 2);
    group.bench_function("free_rank_two_plus_maximal_n4", |b| b.iter(|| hdepth(black_box(&r2m), &cfg).unwrap().value));
    let rm = free_plus_maximal(6, 1);
    group.bench_function("free_plus_maximal_n6", |b| b.iter(|| hdepth(black_box(&rm), &cfg).unwrap().value));
    group.finish();
}

fn stanley(c: &mut Criterion) {
    let mut group = c.benchmark_group("stanley_maximal_ideal");
    for n in 5..=7 {
        let q = QuotientModule::new(MonomialIdeal::maximal(n), MonomialIdeal::zero(n)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &q, |b, q| {
            b.iter(|| sdepth(black_box(q), &SearchConfig::default()).unwrap().value)
        });
    }
    group.finish();
}

criterion_group!(benches, maximal_ideal_by_order, pruning_switches, direct_sums, stanley);
criterion_main!(benches);
