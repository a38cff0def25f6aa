//! Criterion benchmarks for the exact linear-algebra kernels and the
//! verification pipeline stages.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use transgress_core::exact::CircleValue;
use transgress_core::gk;
use transgress_core::groupcoh::{bar_coboundary, BarCochain, FiniteGroup, TrivialModule};
use transgress_core::matrix::{snf, snf_diagonal};
use transgress_core::simplicial::fixtures;
use transgress_core::simplicial::Ring;

fn snf_benches(c: &mut Criterion) {
    let rp2 = fixtures::rp2_minimal().unwrap();
    let d1_rp2 = rp2.complex.coboundary_matrix(1);
    c.bench_function("snf/rp2 d1 (10x15) with transforms", |b| {
        b.iter(|| snf(&d1_rp2))
    });

    let lens3 = fixtures::lens(3, 1, 2).unwrap();
    let d1_lens = lens3.complex.coboundary_matrix(1);
    c.bench_function("snf/lens(3,1) d1 (576x344) diagonal only", |b| {
        b.iter(|| snf_diagonal(&d1_lens))
    });
    c.bench_function("snf/lens(3,1) d1 (576x344) with transforms", |b| {
        b.iter(|| snf(&d1_lens))
    });
}

fn cohomology_benches(c: &mut Criterion) {
    c.bench_function("cohomology/lens(3,1) H^2 cold", |b| {
        b.iter_batched(
            || fixtures::lens(3, 1, 2).unwrap(),
            |f| f.complex.cohomology(2, Ring::Z),
            BatchSize::SmallInput,
        )
    });
}

fn bar_benches(c: &mut Criterion) {
    let v4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
    let module = TrivialModule::<CircleValue>::new();
    let cochain = BarCochain {
        degree: 2,
        values: (0..16).map(|i| CircleValue::from_frac(i % 4, 4)).collect(),
    };
    c.bench_function("bar/coboundary V4 degree 2 -> 3", |b| {
        b.iter(|| bar_coboundary(&v4, &module, &cochain))
    });
}

fn pipeline_benches(c: &mut Criterion) {
    let rp2 = fixtures::rp2_minimal().unwrap();
    c.bench_function("pipeline/thm13 rp2 z5 end to end", |b| {
        b.iter_batched(
            || fixtures::rp2_minimal().unwrap(),
            |f| gk::thm13_verify(&f.complex, &f.actions["z5"], &f.alpha_rho, f.basepoint).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let action = &rp2.actions["z5"];
    c.bench_function("pipeline/kappa table rp2 z5 (cached SNF)", |b| {
        b.iter(|| gk::kappa_table(&rp2.complex, action, &rp2.alpha_rho, rp2.basepoint, 2).unwrap())
    });
}

criterion_group!(
    benches,
    snf_benches,
    cohomology_benches,
    bar_benches,
    pipeline_benches
);
criterion_main!(benches);
