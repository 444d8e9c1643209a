use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cspoly::certifier::{certify_theorem, is_two_neighborly, CertifyOptions};
use cspoly::predicates::is_almost_acute;
use cspoly::{construct, ConstructionParams};
use cspoly_bench::constructed;

fn bench_construct(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    g.sample_size(10);
    for d in [4usize, 5, 6] {
        let params = ConstructionParams::new(d, 0).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(d), &params, |b, p| {
            b.iter(|| construct(p).unwrap())
        });
    }
    g.finish();
}

fn bench_almost_acute(c: &mut Criterion) {
    let mut g = c.benchmark_group("almost_acute_scan");
    for d in [4usize, 5, 6] {
        let s = constructed(d);
        g.bench_with_input(BenchmarkId::from_parameter(d), &s, |b, s| {
            b.iter(|| is_almost_acute(s, 1).unwrap())
        });
    }
    g.finish();
}

fn bench_certify(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    for d in [4usize, 5, 6] {
        let s = constructed(d);
        g.bench_with_input(BenchmarkId::new("direct", d), &s, |b, s| {
            b.iter(|| certify_theorem(s, d, &CertifyOptions::default()).unwrap())
        });
    }
    for d in [4usize, 5] {
        let s = constructed(d);
        g.bench_with_input(BenchmarkId::new("lp_only_edges", d), &s, |b, s| {
            b.iter(|| is_two_neighborly(s, &CertifyOptions::lp_only()).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_construct, bench_almost_acute, bench_certify);
criterion_main!(benches);
