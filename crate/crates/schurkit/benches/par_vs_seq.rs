//! Parallel vs sequential sweeps: the relation verifier and the Hecke
//! dimension certificate both fan out over independent instances through
//! `maybe_par_map`, so they measure the rayon speedup directly.

use criterion::{criterion_group, criterion_main, Criterion};

use schurkit::hecke::{certify_dimension, CycContext, CycParams};
use schurkit::schurrep::{verify_relations, Suite};

fn relation_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("relations-full-t2-d3");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| verify_relations(Suite::Full, 2, 3, false).unwrap())
    });
    g.bench_function("parallel", |b| {
        b.iter(|| verify_relations(Suite::Full, 2, 3, true).unwrap())
    });
    g.finish();
}

fn dimension_certificate(c: &mut Criterion) {
    let ctx = CycContext::new(3, 2, CycParams::Generic);
    let mut g = c.benchmark_group("hecke-dim-m3-l2");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| certify_dimension(&ctx, false).unwrap())
    });
    g.bench_function("parallel", |b| {
        b.iter(|| certify_dimension(&ctx, true).unwrap())
    });
    g.finish();
}

criterion_group!(benches, relation_sweep, dimension_certificate);
criterion_main!(benches);
