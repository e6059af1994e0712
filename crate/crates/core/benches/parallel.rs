//! Sequential against rayon execution for the data-parallel kernels.
//!
//! Without the `parallel` feature both variants run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mlion_core::communicability::{communicability, distance_field_with, CommunicabilityMode, MeanConvention};
use mlion_core::layers::{layer_pair_table_with, LayerPairKind};
use mlion_core::metrics::{hhi_table_with, strength_table_with, StrengthKind};
use mlion_core::synthetic::wiod_like;
use mlion_core::{Direction, Execution};

const MODES: [(Execution, &str); 2] = [(Execution::Sequential, "sequential"), (Execution::Parallel, "parallel")];

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("metrics");
    for (n, l) in [(20, 10), (44, 20)] {
        let net = wiod_like(n, l, 7).unwrap();
        let size = format!("{}", n * l);
        for (exec, name) in MODES {
            group.bench_with_input(BenchmarkId::new(format!("strength/{name}"), &size), &net, |b, net| {
                b.iter(|| strength_table_with(exec, black_box(net), Direction::In, StrengthKind::Total))
            });
            group.bench_with_input(BenchmarkId::new(format!("hhi/{name}"), &size), &net, |b, net| {
                b.iter(|| hhi_table_with(exec, black_box(net), Direction::Out))
            });
        }
    }
    group.finish();
}

fn layer_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("layer_pairs");
    let net = wiod_like(44, 20, 11).unwrap();
    for kind in [LayerPairKind::OverlapW, LayerPairKind::CorrW] {
        for (exec, name) in MODES {
            group.bench_function(BenchmarkId::new(name, kind.name()), |b| {
                b.iter(|| layer_pair_table_with(exec, black_box(&net), kind).unwrap())
            });
        }
    }
    group.finish();
}

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_field");
    group.sample_size(20);
    for (n, l) in [(20, 10), (30, 20)] {
        let net = wiod_like(n, l, 3).unwrap().symmetrize();
        let field = communicability(&net, CommunicabilityMode::Weighted).unwrap();
        for (exec, name) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n * l), &field, |b, field| {
                b.iter(|| distance_field_with(exec, black_box(field), MeanConvention::AllEntries).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, metrics, layer_pairs, distances);
criterion_main!(benches);
