use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lerch_core::quadrature::sine_cot_integral;
use lerch_core::{
    hurwitz_zeta_neg, lerch_partial_closed, polylog, trig_partial_closed, ComplexValue, QuadConfig, SumParams,
    TrigKind,
};
use std::hint::black_box;

fn c(re: f64) -> ComplexValue {
    ComplexValue::new(re, 0.0)
}

fn quadrature(cr: &mut Criterion) {
    let cfg = QuadConfig::default();
    let mut g = cr.benchmark_group("sine_cot_integral");
    for n in [10u64, 100, 1000] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sine_cot_integral(black_box(1.0), black_box(4.0), n, &cfg).unwrap())
        });
    }
    g.finish();
}

fn partial_sums(cr: &mut Criterion) {
    let cfg = QuadConfig::default();
    let mut g = cr.benchmark_group("partial_closed");
    for n in [17u64, 200] {
        let p = SumParams { a: c(1.0), b: c(1.0 / 3.0), m: c(3.0), k: 2, n };
        g.bench_with_input(BenchmarkId::new("cos-even", n), &p, |b, p| {
            b.iter(|| trig_partial_closed(TrigKind::CosEven, black_box(p), &cfg).unwrap())
        });
        let p = SumParams { m: ComplexValue::new(-1.0, 2.0), ..p };
        g.bench_with_input(BenchmarkId::new("exponential", n), &p, |b, p| {
            b.iter(|| lerch_partial_closed(black_box(p), &cfg).unwrap())
        });
    }
    g.finish();
}

fn polylogarithm(cr: &mut Criterion) {
    let cfg = QuadConfig::default();
    let mut g = cr.benchmark_group("polylog");
    for k in [2u32, 5] {
        g.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| polylog(k, black_box(c(-1.0)), &cfg).unwrap())
        });
    }
    g.finish();
}

fn hurwitz(cr: &mut Criterion) {
    cr.bench_function("hurwitz_zeta_neg k=10", |b| b.iter(|| hurwitz_zeta_neg(10, black_box(c(0.37))).unwrap()));
}

criterion_group!(benches, quadrature, partial_sums, polylogarithm, hurwitz);
criterion_main!(benches);
