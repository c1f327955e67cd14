//! Benchmarks for the expensive paths: component elimination, skew-span
//! construction, chain homology, and the character solver. Each iteration
//! builds its structures from scratch so the numbers track cold costs.

use std::hint::black_box;
use std::sync::Arc;

use abg_core::charring;
use abg_core::homology::{HomologyComputer, DEFAULT_CHAIN_CAP};
use abg_core::{deriv, AbgAlgebra, Algebra, AlgebraConfig};
use criterion::{criterion_group, criterion_main, Criterion};

fn fresh(d: u32) -> Algebra {
    Algebra::new(d, AlgebraConfig::default())
}

fn bench_components(c: &mut Criterion) {
    let mut g = c.benchmark_group("component");
    g.sample_size(10);
    g.bench_function("two-generators-degree-5", |b| {
        b.iter(|| black_box(fresh(2).dim(5).unwrap()))
    });
    g.bench_function("two-generators-degree-6", |b| {
        b.iter(|| black_box(fresh(2).dim(6).unwrap()))
    });
    g.bench_function("three-generators-degree-4", |b| {
        b.iter(|| black_box(fresh(3).dim(4).unwrap()))
    });
    g.finish();
}

fn bench_skew_span(c: &mut Criterion) {
    let mut g = c.benchmark_group("skew-span");
    g.sample_size(10);
    g.bench_function("two-generators-degree-5", |b| {
        b.iter(|| {
            let alg = fresh(2);
            black_box(deriv::build_b_space(&alg, 5).unwrap().dim())
        })
    });
    g.bench_function("three-generators-degree-4", |b| {
        b.iter(|| {
            let alg = fresh(3);
            black_box(deriv::build_b_space(&alg, 4).unwrap().dim())
        })
    });
    g.finish();
}

fn bench_homology(c: &mut Criterion) {
    let mut g = c.benchmark_group("homology");
    g.sample_size(10);
    g.bench_function("one-generator-r3-n4", |b| {
        b.iter(|| {
            let abg = Arc::new(AbgAlgebra::new(Arc::new(fresh(1))));
            let computer = HomologyComputer::new(abg, DEFAULT_CHAIN_CAP);
            black_box(computer.report(3, 4).unwrap().entries.len())
        })
    });
    g.finish();
}

fn bench_characters(c: &mut Criterion) {
    let mut g = c.benchmark_group("characters");
    g.bench_function("solve-three-generators-n6", |b| {
        b.iter(|| black_box(charring::solve_conjecture(3, 6).unwrap().a.len()))
    });
    g.bench_function("decompose-product-z4", |b| {
        let a: Vec<_> = [2i64, 4, 8].iter().map(|&v| v.into()).collect();
        let bb: Vec<_> = [0i64, 1, 4].iter().map(|&v| v.into()).collect();
        b.iter(|| {
            let series = charring::phi(&a, &bb, 4);
            for k in 0..4 {
                black_box(charring::decompose(&series.coeffs[k]).unwrap());
            }
        })
    });
    g.finish();
}

criterion_group!(benches, bench_components, bench_skew_span, bench_homology, bench_characters);
criterion_main!(benches);
