use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use csl_core::{
    curve_select, jet_equations, project_chain, wdivide, wprepare, CurveSelOptions, ExponentVector, Field, IdealPresentation, Point, Ring,
    TruncatedSeries,
};

fn poly(ring: Ring, terms: &[(&[u32], i64)]) -> TruncatedSeries {
    TruncatedSeries::from_terms(ring, terms.iter().map(|(e, c)| (ExponentVector::from_dense(e), ring.field.from_i64(*c)))).unwrap()
}

fn weierstrass(c: &mut Criterion) {
    let mut group = c.benchmark_group("weierstrass");
    for trunc in [6usize, 10, 14] {
        let r = Ring::new(3, trunc, Field::Rational);
        let f = poly(r, &[(&[0, 0, 2], 1), (&[1, 0, 0], 1), (&[0, 1, 1], 2), (&[2, 1, 0], -1)]);
        let g = poly(r, &[(&[0, 0, 5], 1), (&[1, 1, 1], 3), (&[0, 2, 0], 1), (&[1, 0, 3], -2)]);
        group.bench_with_input(BenchmarkId::new("divide", trunc), &trunc, |b, _| b.iter(|| wdivide(black_box(&g), &f, 2).unwrap()));
        group.bench_with_input(BenchmarkId::new("prepare", trunc), &trunc, |b, _| b.iter(|| wprepare(black_box(&f), 2).unwrap()));
    }
    group.finish();
}

fn selection(c: &mut Criterion) {
    let q = Field::Rational;
    let r = Ring::new(2, 6, q);
    let cusp = IdealPresentation::new(r, vec![poly(r, &[(&[2, 0], 1), (&[0, 3], -1)])]).unwrap();
    let z = IdealPresentation::new(r, vec![TruncatedSeries::var(r, 0), TruncatedSeries::var(r, 1)]).unwrap();
    let a = Point::origin(2, q);
    c.bench_function("chain/cusp", |b| b.iter(|| project_chain(black_box(&cusp), &z, Default::default()).unwrap()));
    c.bench_function("curvesel/cusp", |b| {
        b.iter(|| curve_select(black_box(&cusp), &z, &a, CurveSelOptions { ts: Some(12), ..Default::default() }).unwrap())
    });

    let r3 = Ring::new(3, 6, q);
    let power_chain = IdealPresentation::new(r3, vec![poly(r3, &[(&[1, 0, 0], 1), (&[0, 2, 0], -1)]), poly(r3, &[(&[1, 0, 0], 1), (&[0, 0, 3], -1)])]).unwrap();
    let z3 = IdealPresentation::new(r3, (0..3).map(|v| TruncatedSeries::var(r3, v)).collect()).unwrap();
    let a3 = Point::origin(3, q);
    c.bench_function("curvesel/x=y^2=z^3", |b| {
        b.iter(|| curve_select(black_box(&power_chain), &z3, &a3, CurveSelOptions { ts: Some(24), ..Default::default() }).unwrap())
    });
}

fn jets(c: &mut Criterion) {
    let r = Ring::new(2, 3, Field::Rational);
    let cusp = poly(r, &[(&[2, 0], 1), (&[0, 3], -1)]);
    let mut group = c.benchmark_group("jet_equations");
    for order in [2usize, 4, 8] {
        group.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &m| b.iter(|| jet_equations(black_box(std::slice::from_ref(&cusp)), m).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, weierstrass, selection, jets);
criterion_main!(benches);
