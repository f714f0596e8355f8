use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ymqm_bench::{small_grid, working_point};
use ymqm_core::assembly::{cancellation_table, leading_total, ChannelModel};
use ymqm_core::central::{imn_leading, Correction, SquarePipeline};
use ymqm_core::channels::channel_partition;
use ymqm_core::quad::QuadOptions;
use ymqm_core::spectral::{full_spectrum, quad_imn, DEFAULT_MEMORY_BUDGET};
use ymqm_core::wk::{wk_sequence, PotentialSpec};

fn exact(c: &mut Criterion) {
    c.bench_function("wk quartic W0..W4", |b| b.iter(|| wk_sequence(&PotentialSpec::quartic_xy(), black_box(4)).unwrap()));
    c.bench_function("wk linear W0..W8", |b| b.iter(|| wk_sequence(&PotentialSpec::linear_alpha(), black_box(8)).unwrap()));
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("square pipeline k=8", |b| b.iter(|| SquarePipeline::new(black_box(8)).unwrap()));
    g.finish();
    c.bench_function("cancellation table k=8", |b| {
        b.iter(|| cancellation_table(black_box(8), ChannelModel::Adiabatic, false).unwrap())
    });
}

fn numeric(c: &mut Criterion) {
    let p = working_point();
    c.bench_function("channel partition k=8", |b| b.iter(|| channel_partition(8, black_box(&p)).unwrap()));
    c.bench_function("leading total", |b| b.iter(|| leading_total(black_box(&p)).unwrap()));
    c.bench_function("I_21 closed form", |b| b.iter(|| imn_leading(2, 1, black_box(&p), Correction::On).unwrap()));
    let opts = QuadOptions::tight();
    c.bench_function("I_21 quadrature", |b| b.iter(|| quad_imn(2, 1, black_box(&p), &opts).unwrap()));
}

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("spectral");
    g.sample_size(10);
    g.bench_function("small grid spectrum", |b| {
        b.iter(|| full_spectrum(1.0, 1.0, black_box(small_grid()), DEFAULT_MEMORY_BUDGET).unwrap())
    });
    g.finish();
}

criterion_group!(benches, exact, numeric, spectral);
criterion_main!(benches);
