//! Parallel-versus-sequential comparison of the batched sweeps.
//!
//! Requires the default `parallel` feature so both code paths exist in one
//! binary; `verify_all_perfect_even` fans out over rayon while the `_seq`
//! variants run the identical work on one thread.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cube_profiles::matching::Dimension;
use cube_profiles::oracle::SearchBudget;
use cube_profiles::sweep::{
    oracle_agreement, oracle_agreement_seq, verify_all_perfect_even, verify_all_perfect_even_seq,
};

fn bench_perfect_even_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("perfect_even_sweep");
    group.sample_size(10);
    for n in [5u32, 6] {
        let dim = Dimension::new(n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &dim, |b, &dim| {
            b.iter(|| {
                let report = verify_all_perfect_even(dim);
                assert!(report.all_verified());
                black_box(report.tuples)
            });
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &dim, |b, &dim| {
            b.iter(|| {
                let report = verify_all_perfect_even_seq(dim);
                assert!(report.all_verified());
                black_box(report.tuples)
            });
        });
    }
    group.finish();
}

fn bench_oracle_agreement(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_agreement");
    group.sample_size(10);
    let budget = SearchBudget::default();
    for n in [3u32, 4] {
        let dim = Dimension::new(n).unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", n), &dim, |b, &dim| {
            b.iter(|| {
                let report = oracle_agreement(dim, &budget).unwrap();
                assert!(report.agrees());
                black_box(report.checked)
            });
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &dim, |b, &dim| {
            b.iter(|| {
                let report = oracle_agreement_seq(dim, &budget).unwrap();
                assert!(report.agrees());
                black_box(report.checked)
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_perfect_even_sweep, bench_oracle_agreement);
criterion_main!(benches);
