use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use std::hint::black_box;

use mch_asy::numerics::{airy, jacobi_theta, quad_pv, QuadratureSpec, ThetaParams};
use mch_asy::painleve2::{eval_pii, solve_pii, PiiCache};
use mch_asy::phase::{point_from_s, point_from_window, RegionConstants, RegionTag};
use mch_asy::region1::u_region1;
use mch_asy::region2::{u_region2_with, Region2Constants};
use mch_asy::region3::u_region3_complex;
use mch_asy::scattering::ScatteringData;

fn special_functions(c: &mut Criterion) {
    c.bench_function("airy/-7.3", |b| b.iter(|| airy(black_box(-7.3))));
    let p = ThetaParams::new(Complex64::new(0.0, 1.0), 1e-17).unwrap();
    c.bench_function("theta/varkappa=i", |b| b.iter(|| jacobi_theta(black_box(Complex64::new(0.3, 0.2)), &p)));
    let spec = QuadratureSpec::default();
    c.bench_function("pv/lorentzian", |b| {
        b.iter(|| quad_pv(|x| Complex64::new(1.0 / (1.0 + x * x), 0.0), black_box(0.9), &spec))
    });
}

fn painleve(c: &mut Criterion) {
    c.bench_function("pii/solve k=0.7", |b| b.iter(|| solve_pii(black_box(0.7), -10.0, 10.0, 1e-10)));
    c.bench_function("pii/solve k=1", |b| b.iter(|| solve_pii(black_box(1.0), -10.0, 10.0, 1e-10)));
    let sol = solve_pii(0.7, -10.0, 10.0, 1e-10).unwrap();
    c.bench_function("pii/eval", |b| b.iter(|| eval_pii(&sol, black_box(-3.21))));
}

fn regions(c: &mut Criterion) {
    let t = 1e6;
    let rc = RegionConstants::default();
    let cache = PiiCache::default();
    let data = ScatteringData::family(0.5, 0.0, 0.05).unwrap();
    let p1 = point_from_s(0.1, t, RegionTag::I).unwrap();
    cache.get(0.5).unwrap();
    c.bench_function("region1/point", |b| b.iter(|| u_region1(black_box(&p1), &data, &cache, &rc)));

    c.bench_function("region2/constants", |b| b.iter(|| Region2Constants::new(black_box(&data))));
    let consts = Region2Constants::new(&data).unwrap();
    let p2 = point_from_s(0.3, t, RegionTag::II).unwrap();
    c.bench_function("region2/point", |b| b.iter(|| u_region2_with(black_box(&p2), &consts, &cache, &rc)));

    let shock = ScatteringData::family(1.0, 0.0, 0.5).unwrap();
    let p3 = point_from_window(4.0, t).unwrap();
    let mut group = c.benchmark_group("region3");
    group.sample_size(20);
    group.bench_function("point", |b| b.iter(|| u_region3_complex(black_box(&p3), &shock, 1.0, 1.0, &rc)));
    group.finish();
}

criterion_group!(benches, special_functions, painleve, regions);
criterion_main!(benches);
