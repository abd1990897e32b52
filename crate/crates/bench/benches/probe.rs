use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jacobson_bench::{key, probe_input};
use jacobson_core::presentations::{completeness_probe, LyndonBasis};

fn lyndon(c: &mut Criterion) {
    c.bench_function("lyndon_basis_10", |b| b.iter(|| LyndonBasis::new(10).len()));
}

fn probe(c: &mut Criterion) {
    let mut g = c.benchmark_group("completeness_probe");
    g.sample_size(10);
    for (k, d) in [("sl:3", 8), ("sl:3", 10), ("sl:4", 9)] {
        let (rels, n, r) = probe_input(&key(k));
        g.bench_with_input(BenchmarkId::new(k, d), &d, |b, &d| b.iter(|| completeness_probe(&rels, n, r, d).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, lyndon, probe);
criterion_main!(benches);
