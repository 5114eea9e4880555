//! Rayon pool with all cores against a single-thread pool. Build with
//! `--no-default-features` to time the sequential fallback instead.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dimwit::catalog::get_case;
use dimwit::classical::{classical_bound, enumerate_vertices, DEFAULT_CAP};
use dimwit::quantum::{seesaw, SeesawConfig};
use rayon::ThreadPool;

fn pools() -> Vec<(String, ThreadPool)> {
    let all = rayon::current_num_threads();
    [1, all]
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let label = if i == 0 { "threads=1".to_string() } else { format!("threads=all({n})") };
            (label, rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap())
        })
        .collect()
}

fn vertices(c: &mut Criterion) {
    let wj = get_case("WJ").unwrap();
    let mut g = c.benchmark_group("enumerate_vertices/WJ d=3");
    g.sample_size(10);
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| enumerate_vertices(black_box(wj.scenario()), [3, 3], DEFAULT_CAP).unwrap().len()))
        });
    }
    g.finish();
}

fn bounds(c: &mut Criterion) {
    let drac = get_case("DRAC").unwrap();
    let mut g = c.benchmark_group("classical_bound/DRAC d=3");
    g.sample_size(10);
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| classical_bound(black_box(&drac.witness), drac.scenario(), [3, 3]).unwrap().0))
        });
    }
    g.finish();
}

fn seesaws(c: &mut Criterion) {
    let wk = get_case("WK").unwrap();
    let cfg = SeesawConfig {
        restarts: 16,
        max_iters: 100,
        ..SeesawConfig::default()
    };
    let mut g = c.benchmark_group("seesaw/WK 16 restarts");
    g.sample_size(10);
    for (threads, pool) in pools() {
        g.bench_with_input(BenchmarkId::from_parameter(&threads), &pool, |b, pool| {
            b.iter(|| pool.install(|| seesaw(black_box(&wk.witness), wk.scenario(), [2, 2], &cfg).unwrap().value))
        });
    }
    g.finish();
}

criterion_group!(benches, vertices, bounds, seesaws);
criterion_main!(benches);
