use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use opineq_core::harness::reproduce_tables;
use opineq_core::inequalities::{aluthge_reports, thm7_reports, Derived};
use opineq_core::linalg::herm_eig;
use opineq_core::random::{gaussian_matrix, stream};
use opineq_core::{numerical_radius, SweepConfig};

fn eigen(c: &mut Criterion) {
    let mut g = c.benchmark_group("herm_eig");
    for n in [4, 8, 16] {
        let t = gaussian_matrix(n, n, &mut stream(1, n as u64));
        let h = &t + &t.adjoint();
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| herm_eig(black_box(h)).unwrap()));
    }
    g.finish();
}

fn radius(c: &mut Criterion) {
    let cfg = SweepConfig::default();
    let mut g = c.benchmark_group("numerical_radius");
    for n in [2, 4, 8] {
        let t = gaussian_matrix(n, n, &mut stream(2, n as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &t, |b, t| {
            b.iter(|| numerical_radius(black_box(t), &cfg).unwrap())
        });
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let cfg = SweepConfig::default();
    let t = gaussian_matrix(4, 4, &mut stream(3, 0));
    c.bench_function("thm7_reports/4", |b| {
        b.iter(|| thm7_reports(&Derived::new(black_box(&t), &cfg).unwrap()).unwrap())
    });
    c.bench_function("aluthge_reports/4", |b| {
        b.iter(|| aluthge_reports(&Derived::new(black_box(&t), &cfg).unwrap()).unwrap())
    });
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    g.bench_function("reproduce", |b| b.iter(|| reproduce_tables(&cfg).unwrap()));
    g.finish();
}

criterion_group!(benches, eigen, radius, bounds);
criterion_main!(benches);
