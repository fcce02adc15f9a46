use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eraser_bench::{headline, ingraham, rate_regime};
use eraser_core::scenario::{apply_pulse2, emission_map, evolution_map, evolve, prepare_after_gamma, EmissionWindow};
use eraser_core::{check_isometry, compute_pattern, no_signal_gap, ScenarioConfig};

fn configs() -> [(&'static str, ScenarioConfig); 3] {
    [("headline", headline()), ("rate", rate_regime()), ("ingraham", ingraham())]
}

fn bench_pattern(c: &mut Criterion) {
    let mut group = c.benchmark_group("pattern");
    for (name, cfg) in configs() {
        let state = evolve(&cfg).unwrap();
        group.bench_with_input(BenchmarkId::new("evolve", name), &cfg, |b, cfg| b.iter(|| evolve(black_box(cfg))));
        group.bench_with_input(BenchmarkId::new("screen", name), &cfg, |b, cfg| {
            b.iter(|| compute_pattern(black_box(&state), cfg))
        });
    }
    for points in [201, 2001, 20001] {
        let cfg = ScenarioConfig { grid_points: points, ..headline() };
        let state = evolve(&cfg).unwrap();
        group.bench_with_input(BenchmarkId::new("grid_points", points), &cfg, |b, cfg| {
            b.iter(|| compute_pattern(black_box(&state), cfg))
        });
    }
    group.finish();
}

fn bench_audits(c: &mut Criterion) {
    let mut group = c.benchmark_group("audit");
    for (name, cfg) in configs() {
        group.bench_with_input(BenchmarkId::new("no_signal_gap", name), &cfg, |b, cfg| {
            b.iter(|| no_signal_gap(black_box(cfg)))
        });
        group.bench_with_input(BenchmarkId::new("isometry", name), &cfg, |b, cfg| {
            b.iter(|| check_isometry(&evolution_map(black_box(cfg)).unwrap()))
        });
    }
    group.finish();
}

fn bench_emission(c: &mut Criterion) {
    let excited = apply_pulse2(&prepare_after_gamma(0.2).unwrap());
    let complete = emission_map(0.7, EmissionWindow::Complete).unwrap();
    let finite = emission_map(0.7, EmissionWindow::Finite { gamma_t: 1.0 }).unwrap();
    let mut group = c.benchmark_group("emission");
    group.bench_function("build", |b| b.iter(|| emission_map(black_box(0.7), EmissionWindow::Complete)));
    group.bench_function("apply_complete", |b| b.iter(|| complete.apply(black_box(&excited))));
    group.bench_function("apply_finite", |b| b.iter(|| finite.apply(black_box(&excited))));
    group.finish();
}

criterion_group!(benches, bench_pattern, bench_audits, bench_emission);
criterion_main!(benches);
