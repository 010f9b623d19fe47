use criterion::{criterion_group, criterion_main, Criterion};
use minmod_core::characters::{gordon_lhs, gordon_rhs, nahm_refined};
use minmod_core::filtration::pbw_refined_irr;
use minmod_core::jets::freeness_vertexalg;
use minmod_core::modes::vacuum_singular;
use minmod_core::verma::gram;
use minmod_core::ModelParams;
use std::hint::black_box;

fn bench_gordon(c: &mut Criterion) {
    c.bench_function("gordon_identity s=4 i=4 N=40", |b| {
        b.iter(|| {
            let lhs = gordon_lhs(black_box(4), black_box(4), 40);
            let rhs = gordon_rhs(black_box(4), black_box(4), 40);
            assert_eq!(lhs.first_mismatch(&rhs), None);
        })
    });
}

fn bench_gram(c: &mut Criterion) {
    let params = ModelParams::boundary(2, 2).unwrap();
    c.bench_function("gram c=-22/5 h=-1/5 n=10", |b| {
        b.iter(|| gram(black_box(&params.c), black_box(&params.h), 10))
    });
}

fn bench_refined(c: &mut Criterion) {
    let params = ModelParams::boundary(3, 2).unwrap();
    c.bench_function("pbw_refined_irr s=3 i=2 (8,8)", |b| {
        b.iter(|| {
            let t = pbw_refined_irr(&params.c, &params.h, 8, 8);
            let series = nahm_refined(3, 2, 8, 8);
            assert_eq!(t.first_mismatch_vs(&series), None);
        })
    });
}

fn bench_singular(c: &mut Criterion) {
    c.bench_function("vacuum_singular (2,9)", |b| {
        b.iter(|| vacuum_singular(black_box(2), black_box(9)).unwrap())
    });
}

fn bench_freeness(c: &mut Criterion) {
    c.bench_function("freeness_vertexalg (3,4) (6,12)", |b| {
        b.iter(|| {
            let v = freeness_vertexalg(3, 4, 6, 12).unwrap();
            assert!(!v.is_free);
        })
    });
}

criterion_group!(
    benches,
    bench_gordon,
    bench_gram,
    bench_refined,
    bench_singular,
    bench_freeness
);
criterion_main!(benches);
