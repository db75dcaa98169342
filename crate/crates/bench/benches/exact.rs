use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qedlife::exact::laguerre;
use qedlife::hydrogen::{gordon_radial_integral, DipoleTable};
use qedlife::linewidth::{im_z_matrix, im_z_momentum_form, CutoffFunction};

fn bench_laguerre(c: &mut Criterion) {
    let mut group = c.benchmark_group("laguerre");
    for lambda in [4usize, 8, 12] {
        group.bench_with_input(
            BenchmarkId::from_parameter(lambda),
            &lambda,
            |b, &lambda| b.iter(|| laguerre(black_box(lambda), 3).unwrap()),
        );
    }
    group.finish();
}

fn bench_gordon(c: &mut Criterion) {
    c.bench_function("gordon R^{1,0}_{8,1}", |b| {
        b.iter(|| gordon_radial_integral(black_box(8), 1, 1, 0).unwrap())
    });
}

fn bench_dipole_table(c: &mut Criterion) {
    c.bench_function("dipole table 4 -> 3", |b| {
        b.iter(|| DipoleTable::build(black_box(4), 3).unwrap())
    });
}

fn bench_im_z(c: &mut Criterion) {
    let mut group = c.benchmark_group("im_z");
    group.sample_size(10);
    for n in [3u32, 4, 5] {
        group.bench_with_input(BenchmarkId::new("position", n), &n, |b, &n| {
            b.iter(|| im_z_matrix(black_box(n), &CutoffFunction::One).unwrap())
        });
    }
    group.bench_function("momentum/3", |b| {
        b.iter(|| im_z_momentum_form(black_box(3), &CutoffFunction::One).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_laguerre,
    bench_gordon,
    bench_dipole_table,
    bench_im_z
);
criterion_main!(benches);
