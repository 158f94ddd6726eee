use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wpp_mori::groebner::{buchberger, saturate, DEFAULT_BUDGET};
use wpp_mori::mult::symbolic_slice;
use wpp_mori::orthpair::mds_test;
use wpp_mori::MonomialOrder;
use wpp_mori_bench::{point_power, triple, xyz, TRIPLES};

fn bench_symbolic_slice(c: &mut Criterion) {
    let mut g = c.benchmark_group("symbolic_slice");
    for (d, mu) in [(60u64, 2u32), (143, 6), (231, 9)] {
        let w = triple([4, 11, 13]);
        g.bench_with_input(BenchmarkId::from_parameter(format!("d{d}_mu{mu}")), &(d, mu), |b, &(d, mu)| {
            b.iter(|| symbolic_slice(black_box(&w), d, mu))
        });
    }
    g.finish();
}

fn bench_mds_test(c: &mut Criterion) {
    let mut g = c.benchmark_group("mds_test");
    g.sample_size(10);
    for t in TRIPLES {
        let w = triple(t);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{t:?}")), &w, |b, w| {
            b.iter(|| mds_test(black_box(w), 14))
        });
    }
    g.finish();
}

fn bench_buchberger(c: &mut Criterion) {
    let mut g = c.benchmark_group("buchberger");
    g.sample_size(10);
    for (t, mu) in [([2, 3, 5], 3u32), ([7, 3, 11], 2)] {
        let w = triple(t);
        let ideal = point_power(&w, mu);
        let order = MonomialOrder::weighted_grevlex(&w.as_array());
        g.bench_function(format!("point_power_{t:?}_mu{mu}"), |b| {
            b.iter(|| buchberger(black_box(&ideal), &order, DEFAULT_BUDGET).unwrap())
        });
        let f = xyz(&ideal);
        g.bench_function(format!("saturate_{t:?}_mu{mu}"), |b| {
            b.iter(|| saturate(black_box(&ideal), &f).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_symbolic_slice, bench_mds_test, bench_buchberger);
criterion_main!(benches);
