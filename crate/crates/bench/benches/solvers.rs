use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rabi_core::oracle;
use rabi_core::scan::{default_window, regular_zeros};
use rabi_core::*;

fn g_functions(c: &mut Criterion) {
    let p = ModelParams::new(1.0, 1.5, 0.37, 0.6).unwrap();
    c.bench_function("g1p single energy", |b| b.iter(|| g1p(black_box(&p), black_box(0.83))));
    let p2 = ModelParams::new(1.0, 3.0, 0.4, 0.35).unwrap();
    c.bench_function("g2p single energy", |b| b.iter(|| g2p(BargmannIndex::Quarter, black_box(&p2), black_box(0.83))));
    c.bench_function("g2p near collapse", |b| {
        let p = p2.with_g(0.49);
        b.iter(|| g2p(BargmannIndex::Quarter, black_box(&p), black_box(0.2)))
    });
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("regular spectrum");
    group.sample_size(10);
    let p = ModelParams::new(1.0, 3.0, 0.4, 0.35).unwrap();
    let w = (default_window(Model::TwoPhoton, &p).unwrap().0, 6.0);
    group.bench_function("2p window to 6", |b| {
        b.iter(|| regular_zeros(Model::TwoPhoton, Some(BargmannIndex::Quarter), &p, w, 1000.0))
    });
    let p1 = ModelParams::new(1.0, 1.5, 1.0, 0.8).unwrap();
    let w1 = default_window(Model::OnePhoton, &p1).unwrap();
    group.bench_function("1p default window", |b| b.iter(|| regular_zeros(Model::OnePhoton, None, &p1, w1, 1000.0)));
    group.finish();
}

fn crossings(c: &mut Criterion) {
    let mut group = c.benchmark_group("crossings");
    group.sample_size(10);
    group.bench_function("1p N=2 M=3", |b| b.iter(|| find_degenerate_1p(2, 3, black_box(1.5), 1.0, None)));
    group.bench_function("1p N=10 M=20", |b| b.iter(|| find_degenerate_1p(10, 20, black_box(2.0), 1.0, None)));
    group.bench_function("2p N=2 M=3", |b| {
        b.iter(|| find_degenerate_2p(BargmannIndex::Quarter, 2, 3, black_box(2.0), 1.0, None))
    });
    group.bench_function("2p N=10 M=20", |b| {
        b.iter(|| find_degenerate_2p(BargmannIndex::Quarter, 10, 20, black_box(2.0), 1.0, None))
    });
    group.finish();
}

fn diagonalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let p = ModelParams::new(1.0, 3.0, 0.4, 0.35).unwrap();
    for n_max in [100, 200] {
        let h = oracle::build_2p(&p, n_max, BargmannIndex::Quarter).unwrap();
        group.bench_function(format!("2p sector n_max={n_max}"), |b| {
            b.iter(|| oracle::symmetric_eigenvalues(black_box(&h.entries), h.dim))
        });
    }
    group.finish();
}

criterion_group!(benches, g_functions, spectra, crossings, diagonalization);
criterion_main!(benches);
