use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hitchin_bench::{a1_field, a2_field, genus_one_leaf, genus_two_leaf};
use hitchin_core::algebra::{discriminant, rat, ExactPoly};
use hitchin_core::cech::DeformationComplex;
use hitchin_core::cubic::{cubic_tensor, res2_series};
use hitchin_core::periods::{complex_roots, dtau_fd, period_matrix, PeriodOptions};

fn exact_algebra(c: &mut Criterion) {
    let f = ExactPoly::from_roots(&(1..=8).map(|r| rat(r, 3)).collect::<Vec<_>>());
    c.bench_function("discriminant_deg8", |b| b.iter(|| discriminant(black_box(&f)).unwrap()));
    let th = a2_field();
    c.bench_function("charpoly_sl3", |b| b.iter(|| black_box(&th).matrix().charpoly()));
}

fn hypercohomology(c: &mut Criterion) {
    let dc = DeformationComplex::new(&a1_field());
    c.bench_function("hyper_dims_a1_d4", |b| b.iter(|| black_box(&dc).hyper_dims()));
    c.bench_function("poisson_matrix_a1_d4", |b| b.iter(|| black_box(&dc).poisson_matrix()));
}

fn cubic(c: &mut Criterion) {
    let g1 = genus_one_leaf();
    let g2 = genus_two_leaf();
    let bdot = ExactPoly::monomial(rat(1, 1), 4);
    let one = ExactPoly::from_i64s(&[1]);
    c.bench_function("res2_series_exact", |b| {
        b.iter(|| res2_series(&g1, &bdot, &one, &one, black_box(&rat(2, 1))).unwrap())
    });
    c.bench_function("cubic_tensor_genus2", |b| b.iter(|| cubic_tensor(black_box(&g2)).unwrap()));
}

fn periods(c: &mut Criterion) {
    let g2 = genus_two_leaf();
    let opts = PeriodOptions { convergence_check: false, ..PeriodOptions::default() };
    c.bench_function("complex_roots_deg6", |b| b.iter(|| complex_roots(black_box(g2.b()), 1e-12).unwrap()));
    c.bench_function("period_matrix_genus2", |b| b.iter(|| period_matrix(black_box(g2.b()), &opts).unwrap()));
    let g1 = genus_one_leaf();
    let bdot = ExactPoly::monomial(rat(1, 1), 4);
    c.bench_function("dtau_fd_genus1", |b| b.iter(|| dtau_fd(&g1, black_box(&bdot), &rat(1, 1000), &opts).unwrap()));
}

criterion_group!(benches, exact_algebra, hypercohomology, cubic, periods);
criterion_main!(benches);
