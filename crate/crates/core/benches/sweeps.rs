use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ggrow_core::caps::Caps;
use ggrow_core::graphprod::{builtin, conj_geodesic_language, GraphProductSpec};
use ggrow_core::rewriting::{check_confluence, RewritingSystem};

fn confluence(specs: &[GraphProductSpec]) -> u64 {
    specs
        .iter()
        .map(|s| check_confluence(&RewritingSystem::build(s, &Caps::default()).unwrap()).pairs)
        .sum()
}

fn conjgeo(specs: &[GraphProductSpec]) -> usize {
    specs.iter().map(|s| conj_geodesic_language(s).unwrap().num_states()).sum()
}

/// Runs `f` on one worker (the sequential schedule) and on the global pool.
#[cfg(feature = "parallel")]
fn compare<T: Send>(c: &mut Criterion, group: &str, f: impl Fn() -> T + Sync) {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function(BenchmarkId::new("one_worker", 1), |b| b.iter(|| one.install(|| black_box(f()))));
    g.bench_function(BenchmarkId::new("global_pool", rayon::current_num_threads()), |b| b.iter(|| black_box(f())));
    g.finish();
}

#[cfg(not(feature = "parallel"))]
fn compare<T: Send>(c: &mut Criterion, group: &str, f: impl Fn() -> T + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    g.bench_function("sequential", |b| b.iter(|| black_box(f())));
    g.finish();
}

fn benches(c: &mut Criterion) {
    let three = builtin::finite_sweep(3, &["Z2", "Z3", "V4"]);
    compare(c, "confluence_sweep_3v", || confluence(&three));
    let k4 = vec![GraphProductSpec::auto_named(
        ["V4", "Z4", "V4", "Z3"]
            .iter()
            .map(|n| {
                ggrow_core::groups::VertexGroup::finite_full(std::sync::Arc::new(
                    ggrow_core::groups::FiniteGroupTable::builtin(n).unwrap(),
                ))
            })
            .collect(),
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    )
    .unwrap()];
    compare(c, "confluence_k4", || confluence(&k4));
    let two = builtin::finite_sweep(2, &["Z2", "Z3", "Z4", "V4"]);
    compare(c, "conjgeo_sweep_2v", || conjgeo(&two));
}

criterion_group!(sweeps, benches);
criterion_main!(sweeps);
