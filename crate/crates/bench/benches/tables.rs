//! Timing tables for the two fast families and the general engine, in the
//! shape of the published per-n result tables: one row per exponent index.
//!
//!   cargo bench -p cycloprime-bench            # everything up to n = 10
//!   cargo bench -p cycloprime-bench -- large   # adds the n = 11, 12 rows

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cycloprime::baselines::{lucas_lehmer, pepin};
use cycloprime::{run_auto, run_general, TestParams};
use std::hint::black_box;
use std::time::Duration;

fn family_rows(c: &mut Criterion, group_name: &str, p: u32, ns: std::ops::RangeInclusive<u32>) {
    let mut group = c.benchmark_group(group_name);
    group.sample_size(10);
    group.measurement_time(Duration::from_secs(2));
    for n in ns {
        let params = TestParams::new(p, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &params, |b, params| {
            b.iter(|| black_box(run_auto(params).unwrap().outcome))
        });
    }
    group.finish();
}

fn table1_p3(c: &mut Criterion) {
    family_rows(c, "table1-p3", 3, 1..=10);
}

fn table2_p5(c: &mut Criterion) {
    family_rows(c, "table2-p5", 5, 1..=10);
}

fn large_rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("large");
    group.sample_size(10);
    for (p, n) in [(3u32, 11u32), (3, 12), (5, 11), (5, 12)] {
        let params = TestParams::new(p, n).unwrap();
        let id = BenchmarkId::new(format!("p{p}"), n);
        group.bench_with_input(id, &params, |b, params| {
            b.iter(|| black_box(run_auto(params).unwrap().outcome))
        });
    }
    group.finish();
}

fn general_engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("general-engine");
    group.sample_size(10);
    group.measurement_time(Duration::from_secs(2));
    for (p, n) in [(7u32, 4u32), (11, 4), (13, 4), (17, 4), (19, 4)] {
        let params = TestParams::new(p, n).unwrap();
        let id = BenchmarkId::new(format!("p{p}"), n);
        group.bench_with_input(id, &params, |b, params| {
            b.iter(|| black_box(run_general(params).unwrap().outcome))
        });
    }
    group.finish();
}

fn path_comparison(c: &mut Criterion) {
    let mut group = c.benchmark_group("p5-paths");
    group.sample_size(10);
    group.measurement_time(Duration::from_secs(2));
    let params = TestParams::new(5, 8).unwrap();
    group.bench_function("recurrence", |b| {
        b.iter(|| black_box(run_auto(&params).unwrap().outcome))
    });
    group.bench_function("general", |b| {
        b.iter(|| black_box(run_general(&params).unwrap().outcome))
    });
    group.finish();
}

fn baselines(c: &mut Criterion) {
    let mut group = c.benchmark_group("baselines");
    group.measurement_time(Duration::from_secs(2));
    group.bench_function("lucas-lehmer-31", |b| {
        b.iter(|| black_box(lucas_lehmer(31).unwrap().outcome))
    });
    group.bench_function("pepin-5", |b| {
        b.iter(|| black_box(pepin(5).unwrap().outcome))
    });
    group.finish();
}

criterion_group!(
    benches,
    table1_p3,
    table2_p5,
    general_engine,
    path_comparison,
    baselines,
    large_rows
);
criterion_main!(benches);
