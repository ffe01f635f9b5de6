use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dunwoody_core::amalgam::Side;
use dunwoody_core::certify::{centralizer_subgroup_certificate_with, run_with, RunOptions};
use dunwoody_core::config::Limits;
use dunwoody_core::par::Exec;
use dunwoody_core::tree::{build_ball_with, joint_stabilizer_census_with, CosetTable};

const STRATEGIES: [(&str, Exec); 2] = [
    ("parallel", Exec::Parallel),
    ("sequential", Exec::Sequential),
];

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_2_10");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        let mut opts = RunOptions::new(2, 10);
        opts.exec = exec;
        group.bench_function(name, |b| b.iter(|| run_with(black_box(&opts)).unwrap()));
    }
    group.finish();
}

fn certificate(c: &mut Criterion) {
    let mut group = c.benchmark_group("centralizer_certificate");
    for (name, exec) in STRATEGIES {
        for i in [6u32, 10] {
            group.bench_with_input(BenchmarkId::new(name, i), &i, |b, &i| {
                b.iter(|| centralizer_subgroup_certificate_with(i, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn tree(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("tree");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        // Built directly, bypassing the shared cache.
        group.bench_function(BenchmarkId::new("coset_table_b_2", name), |b| {
            b.iter(|| CosetTable::build(2, Side::B, &limits, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("ball_1_3", name), |b| {
            b.iter(|| build_ball_with(1, 3, &limits, exec).unwrap())
        });
        group.bench_function(BenchmarkId::new("census_2_2", name), |b| {
            b.iter(|| joint_stabilizer_census_with(2, 2, &limits, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verify, certificate, tree);
criterion_main!(benches);
