//! Benchmarks covering the data-parallel hot paths. The same bench names are
//! produced with and without the `parallel` feature, so the two builds can be
//! compared through criterion baselines:
//!
//!   cargo bench -p dnhs-core -- --save-baseline par
//!   cargo bench -p dnhs-core --no-default-features -- --save-baseline seq
//!   critcmp par seq            # or compare the saved baselines by hand

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dnhs_core::dunkl;
use dnhs_core::eigen;
use dnhs_core::lattice;
use dnhs_core::qseries;
use dnhs_core::spinops;
use dnhs_core::alcove;

fn bench_chain_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_assembly");
    group.sample_size(20);
    for (m, n) in [(2usize, 8usize), (3, 6), (2, 10)] {
        let sites = lattice::dn_sites(n).unwrap();
        let cfg = spinops::SpinConfig::new(m, n).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("m{m}_n{n}")),
            &(sites, cfg),
            |b, (sites, cfg)| b.iter(|| spinops::build_dn_chain(sites, cfg).unwrap()),
        );
    }
    group.finish();
}

fn bench_eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("eigenvalues");
    group.sample_size(10);
    let sites = lattice::dn_sites(8).unwrap();
    let cfg = spinops::SpinConfig::new(2, 8).unwrap();
    let h = spinops::build_dn_chain(&sites, &cfg).unwrap();
    group.bench_function("chain_m2_n8", |b| {
        b.iter(|| eigen::sym_eigenvalues(&h, 1e-9).unwrap())
    });
    group.finish();
}

fn bench_partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition_poly");
    group.sample_size(10);
    for (n, m) in [(10u32, 3u32), (12, 2)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("n{n}_m{m}")),
            &(n, m),
            |b, &(n, m)| b.iter(|| qseries::chain_partition(n, m).unwrap()),
        );
    }
    group.finish();
}

fn bench_tiling(c: &mut Criterion) {
    let mut group = c.benchmark_group("tiling_mc");
    group.sample_size(10);
    for n in [3usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| alcove::tiling_check(n, 20_000, 42))
        });
    }
    group.finish();
}

fn bench_hprime(c: &mut Criterion) {
    let mut group = c.benchmark_group("hprime_symbolic");
    group.sample_size(10);
    group.bench_function("n3_b4_delta0", |b| {
        b.iter(|| dunkl::hprime_matrix(4, 0, 3).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_chain_assembly,
    bench_eigenvalues,
    bench_partition,
    bench_tiling,
    bench_hprime
);
criterion_main!(benches);
