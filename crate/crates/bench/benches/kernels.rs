use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use symdisc_bench::goe_fixture;
use symdisc_core::nearest::{critical_points, nearest_in_discriminant};
use symdisc_core::polyhermite::{second_moment_integral, second_moment_poly};
use symdisc_core::randgeom::gauss_hermite;
use symdisc_core::strata::{enumerate_multiplicity_vectors, MultiplicityVector};
use symdisc_core::symmat::char_poly;

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigendecompose");
    for n in [4, 16, 64] {
        let a = goe_fixture(n, 1).remove(0);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| {
            b.iter(|| black_box(a).eigendecompose().unwrap())
        });
    }
    g.finish();
}

fn exact(c: &mut Criterion) {
    let mut g = c.benchmark_group("exact");
    for k in [8, 20, 30] {
        g.bench_with_input(BenchmarkId::new("second_moment_poly", k), &k, |b, &k| {
            b.iter(|| second_moment_poly(black_box(k)))
        });
        g.bench_with_input(BenchmarkId::new("second_moment_integral", k), &k, |b, &k| {
            b.iter(|| second_moment_integral(black_box(k)))
        });
    }
    let a = goe_fixture(8, 1).remove(0);
    g.bench_function("char_poly_8", |b| b.iter(|| char_poly(black_box(&a))));
    g.bench_function("gauss_hermite_48", |b| b.iter(|| gauss_hermite(black_box(48)).unwrap()));
    g.finish();
}

fn nearest(c: &mut Criterion) {
    let mut g = c.benchmark_group("nearest");
    let a = goe_fixture(32, 1).remove(0);
    g.bench_function("discriminant_32", |b| b.iter(|| nearest_in_discriminant(black_box(&a)).unwrap()));
    let a = goe_fixture(7, 1).remove(0);
    for w in enumerate_multiplicity_vectors(7, true).into_iter().take(4) {
        g.bench_with_input(BenchmarkId::new("critical_points_7", w.to_string()), &w, |b, w: &MultiplicityVector| {
            b.iter(|| critical_points(black_box(&a), w).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, eigen, exact, nearest);
criterion_main!(benches);
