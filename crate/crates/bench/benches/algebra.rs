use criterion::{criterion_group, criterion_main, Criterion};
use jacobson_bench::key;
use jacobson_core::presentations::{verify_suite, SuiteOptions};

fn triples(c: &mut Criterion) {
    let mut g = c.benchmark_group("triple");
    for k in ["sl:8", "o_odd:6", "f4", "e8"] {
        g.bench_function(k, |b| b.iter(|| key(k).triple().unwrap()));
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_suite");
    g.sample_size(10);
    for k in ["sl:6", "g2", "e7", "osp_lambda"] {
        let k = key(k);
        g.bench_function(k.to_string(), |b| b.iter(|| verify_suite(&k, &SuiteOptions::default()).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, triples, suites);
criterion_main!(benches);
