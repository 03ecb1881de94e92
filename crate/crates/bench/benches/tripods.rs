use std::f64::consts::TAU;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use tripod_bench::{convex_support, disk_near_circle, ellipse, limacon, sphere_near_circle};
use tripod_core::morse::{find_interior_critical_points, hyperbolic_minor_checks, MinorCase, SearchOptions};
use tripod_core::polygon::enumerate_regular;
use tripod_core::triple_normal::solve_triple_normal;
use tripod_core::tripod_euclidean::find_tripods;

fn euclidean(c: &mut Criterion) {
    let sc = convex_support();
    c.bench_function("find_tripods/convex", |b| b.iter(|| find_tripods(black_box(&sc)).unwrap()));
    let e = ellipse();
    let third = TAU / 3.0;
    c.bench_function("triple_normal/ellipse", |b| {
        b.iter(|| solve_triple_normal(black_box(&e), [third; 3], None).unwrap())
    });
    let l = limacon();
    let skew = [1.9, 2.1, TAU - 4.0];
    c.bench_function("triple_normal/limacon", |b| {
        b.iter(|| solve_triple_normal(black_box(&l), skew, None).unwrap())
    });
}

fn morse(c: &mut Criterion) {
    let mut g = c.benchmark_group("interior_search");
    g.sample_size(10);
    let opts = SearchOptions::default();
    let d = disk_near_circle();
    g.bench_function("disk", |b| b.iter(|| find_interior_critical_points(black_box(&d), &opts).unwrap()));
    let s = sphere_near_circle();
    g.bench_function("sphere", |b| b.iter(|| find_interior_critical_points(black_box(&s), &opts).unwrap()));
    g.finish();
    c.bench_function("minors/case2", |b| {
        b.iter(|| hyperbolic_minor_checks(black_box(0.5), MinorCase::Two).unwrap())
    });
}

fn polygons(c: &mut Criterion) {
    c.bench_function("polygon/30", |b| b.iter(|| enumerate_regular(black_box(30)).unwrap()));
}

criterion_group!(benches, euclidean, morse, polygons);
criterion_main!(benches);
