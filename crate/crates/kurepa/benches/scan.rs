//! Sequential vs. data-parallel timings for the two batch entry points:
//! the pair scan over a prime range and the congruence suite. Run with
//! `cargo bench -p kurepa`; pass `--no-default-features` to time the
//! build without the parallel code paths compiled in at all.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kurepa::congruence::run_suite;
use kurepa::search::scan_range;
use kurepa::Jobs;

fn job_flavors() -> Vec<(&'static str, Jobs)> {
    let mut flavors = vec![("sequential", Jobs::Sequential)];
    if cfg!(feature = "parallel") {
        flavors.push(("parallel", Jobs::Auto));
    }
    flavors
}

fn bench_scan_range(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_range");
    group.sample_size(10);
    for limit in [2000u64, 10000] {
        for (label, jobs) in job_flavors() {
            group.bench_with_input(
                BenchmarkId::new(label, limit),
                &limit,
                |b, &limit| b.iter(|| scan_range(black_box(limit), jobs).unwrap()),
            );
        }
    }
    group.finish();
}

fn bench_run_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_suite");
    group.sample_size(10);
    let (primes_to, n_to) = (300u64, 200u64);
    for (label, jobs) in job_flavors() {
        group.bench_with_input(
            BenchmarkId::new(label, primes_to),
            &primes_to,
            |b, &primes_to| b.iter(|| run_suite(black_box(primes_to), n_to, jobs)),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_scan_range, bench_run_suite);
criterion_main!(benches);
