use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use singlet_core::builder::{build_layers, count_states, singlet_basis};
use singlet_core::cg::clebsch_gordan;
use singlet_core::correlations::{general_singlet, parity_expectation, DirectionSet};
use singlet_core::HalfInt;

fn counts(c: &mut Criterion) {
    c.bench_function("count_states spin 1 N=18", |b| {
        b.iter(|| count_states(HalfInt::ZERO, black_box(18), HalfInt::ONE))
    });
}

fn coefficients(c: &mut Criterion) {
    let h = HalfInt::from_twice;
    c.bench_function("clebsch_gordan 7/2 x 3", |b| {
        b.iter(|| clebsch_gordan(h(7), h(1), h(6), h(-2), black_box(h(5)), h(-1)).unwrap())
    });
}

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("singlet_basis");
    group.sample_size(10);
    for n in [4usize, 6, 8] {
        group.bench_with_input(BenchmarkId::new("spin-half", n), &n, |b, &n| {
            b.iter(|| singlet_basis(n, HalfInt::HALF).unwrap())
        });
    }
    for n in [3usize, 4, 5] {
        group.bench_with_input(BenchmarkId::new("spin-one", n), &n, |b, &n| {
            b.iter(|| singlet_basis(n, HalfInt::ONE).unwrap())
        });
    }
    group.bench_function("all layers spin-half N=8", |b| {
        b.iter(|| build_layers(8, HalfInt::HALF, false).unwrap())
    });
    group.finish();
}

fn correlations(c: &mut Criterion) {
    let rho = general_singlet(0.3).density();
    let d = DirectionSet::from_angles(&[0.1, 0.7, 1.3, 2.9], &[0.0, 1.0, 2.0, 3.0]).unwrap();
    c.bench_function("parity_expectation", |b| b.iter(|| parity_expectation(black_box(&rho), &d).unwrap()));
}

criterion_group!(benches, counts, coefficients, construction, correlations);
criterion_main!(benches);
