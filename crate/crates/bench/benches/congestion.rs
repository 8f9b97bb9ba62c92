use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use stc_bench::{bfs_tree, instance};
use stc_core::cuts::{balanced_cut_exact, balanced_cut_spectral};
use stc_core::spantree::{exact_stc, tree_congestion, tree_congestion_naive, DEFAULT_BUDGET};
use stc_core::{cong_span_tree, CutOracle, Family};

fn congestion(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree_congestion");
    for n in [50, 200, 800] {
        let g = instance(Family::RandomRegular { d: 4, n }, 1);
        let t = bfs_tree(&g);
        group.bench_with_input(BenchmarkId::new("path_accumulation", n), &n, |b, _| {
            b.iter(|| tree_congestion(black_box(&g), black_box(&t)))
        });
        group.bench_with_input(BenchmarkId::new("naive", n), &n, |b, _| {
            b.iter(|| tree_congestion_naive(black_box(&g), black_box(&t)))
        });
    }
    group.finish();
}

fn cuts(c: &mut Criterion) {
    let mut group = c.benchmark_group("balanced_cut");
    for n in [12, 16, 20] {
        let g = instance(Family::RandomRegular { d: 3, n }, 2);
        group.bench_with_input(BenchmarkId::new("exact", n), &n, |b, _| {
            b.iter(|| balanced_cut_exact(black_box(&g)))
        });
        group.bench_with_input(BenchmarkId::new("spectral", n), &n, |b, _| {
            b.iter(|| balanced_cut_spectral(black_box(&g), 0))
        });
    }
    group.finish();
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("cong_span_tree");
    group.sample_size(20);
    let small = instance(Family::ApexExpander { d: 3, n: 14 }, 3);
    group.bench_function("exact/apex15", |b| {
        b.iter(|| cong_span_tree(black_box(&small), &CutOracle::exact()))
    });
    for n in [100, 400] {
        let g = instance(
            Family::Grid {
                rows: n / 10,
                cols: 10,
            },
            0,
        );
        group.bench_with_input(BenchmarkId::new("spectral/grid", n), &n, |b, _| {
            b.iter(|| cong_span_tree(black_box(&g), &CutOracle::spectral(0)))
        });
    }
    group.finish();
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_stc");
    group.sample_size(10);
    for (name, family) in [
        ("cubic10", Family::RandomRegular { d: 3, n: 10 }),
        ("grid3x4", Family::Grid { rows: 3, cols: 4 }),
    ] {
        let g = instance(family, 4);
        group.bench_function(name, |b| {
            b.iter(|| exact_stc(black_box(&g), DEFAULT_BUDGET))
        });
    }
    group.finish();
}

criterion_group!(benches, congestion, cuts, construction, exhaustive);
criterion_main!(benches);
