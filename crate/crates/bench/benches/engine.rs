use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use quartic_bench::{load, Workloads};
use quartic_core::cohomology::{beilinson_table, cohomology_table, sheaf_ext_dim};
use quartic_core::groebner::Gb;
use quartic_core::homology::Window;
use quartic_core::scenarios::{builtin_claims, run_claims, RunOptions};
use quartic_core::walls::walls;
use quartic_core::{FreeResolution, MonOrder, Q};

fn groebner(c: &mut Criterion) {
    let w = Workloads::load();
    c.bench_function("gb/e2b grevlex", |b| b.iter(|| Gb::of_columns(black_box(&w.e2b.rels), MonOrder::GrevLex)));
    c.bench_function("gb/e2b lex", |b| b.iter(|| Gb::of_columns(black_box(&w.e2b.rels), MonOrder::Lex)));
}

fn resolutions(c: &mut Criterion) {
    let w = Workloads::load();
    c.bench_function("res/line cubic", |b| b.iter(|| FreeResolution::minimal(black_box(&w.line_cubic), 5)));
    c.bench_function("res/wplus", |b| b.iter(|| FreeResolution::minimal(black_box(&w.wplus), 5)));
}

fn sheaves(c: &mut Criterion) {
    let w = Workloads::load();
    let mut g = c.benchmark_group("sheaf");
    g.sample_size(20);
    g.bench_function("cohomology ci -4..4", |b| b.iter(|| cohomology_table(black_box(&w.ci), Window::new(-4, 4))));
    g.bench_function("ext1 e2b", |b| b.iter(|| sheaf_ext_dim(black_box(&w.e2b), &w.e2b, 1)));
    g.bench_function("ext1 wplus", |b| b.iter(|| sheaf_ext_dim(black_box(&w.wplus), &w.wplus, 1)));
    g.bench_function("ext1 planar quartic", |b| {
        b.iter(|| sheaf_ext_dim(black_box(&w.planar_quartic), &w.planar_quartic, 1))
    });
    g.bench_function("ext1 cubic point to line", |b| b.iter(|| sheaf_ext_dim(black_box(&w.cubic_point), &w.line_m1, 1)));
    g.bench_function("beilinson e2b", |b| b.iter(|| beilinson_table(black_box(&w.e2b))));
    g.finish();
}

fn catalog(c: &mut Criterion) {
    let mut g = c.benchmark_group("catalog");
    g.sample_size(10);
    g.bench_function("fixture F8", |b| b.iter(|| load("F8")));
    g.bench_function("walls 4 1", |b| b.iter(|| walls(black_box(4), 1, None)));
    let claims = builtin_claims();
    g.bench_function("full claim catalog", |b| b.iter(|| run_claims::<Q>(black_box(&claims), RunOptions::default())));
    g.finish();
}

criterion_group!(benches, groebner, resolutions, sheaves, catalog);
criterion_main!(benches);
