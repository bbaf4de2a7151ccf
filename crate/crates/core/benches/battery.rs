use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_kit::coxeter::{CoxeterSystem, GenSet};
use hecke_kit::exec::Exec;
use hecke_kit::mackey::verify_mackey;
use hecke_kit::repmod::HeckeModule;
use hecke_kit::scalars::ParamSpec;

/// Every (I, J) pair of A3 with the regular module at two parameter points.
fn mackey_batch(exec: Exec) -> usize {
    let sys = Arc::new(CoxeterSystem::named("A3").unwrap());
    let subsets: Vec<GenSet> = (0u64..8)
        .map(|b| GenSet::from_indices((0..3).filter(|k| b >> k & 1 == 1)))
        .collect();
    let mut jobs = Vec::new();
    for &i in &subsets {
        for &j in &subsets {
            for p in [ParamSpec::new(2, 3), ParamSpec::new(-1, 1)] {
                jobs.push((i, j, p));
            }
        }
    }
    exec.map(jobs, |(i, j, p)| {
        let m = HeckeModule::regular(&sys, i, &p).unwrap();
        verify_mackey(&m, j).passed
    })
    .into_iter()
    .filter(|&ok| ok)
    .count()
}

fn battery(c: &mut Criterion) {
    let mut group = c.benchmark_group("mackey_batch");
    group.sample_size(10);
    for exec in [Exec::Sequential, Exec::Parallel] {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{exec:?}")), &exec, |b, &exec| {
            b.iter(|| mackey_batch(exec))
        });
    }
    group.finish();
}

criterion_group!(benches, battery);
criterion_main!(benches);
