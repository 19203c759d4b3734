//! Parallel core against the sequential fallback.
//!
//! `cargo bench` measures the rayon build on the global pool and on a
//! one-thread pool; `cargo bench --no-default-features` measures the plain
//! loops. Ids carry the build mode so both runs land side by side in the
//! criterion report.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use matroidlab::connectivity::{is_3_connected, k_separations};
use matroidlab::matroid::named;
use matroidlab::removal::brute_force_oracle;
use matroidlab::tangle::branch_width_by_decomposition;
use matroidlab::Matroid;

const MODE: &str = if cfg!(feature = "parallel") { "parallel" } else { "sequential" };

type Setup = Box<dyn Fn() -> Box<dyn Fn() + Send>>;

/// Fresh copies per iteration, so rank tables are rebuilt every time.
fn workloads() -> Vec<(&'static str, Setup)> {
    vec![
        (
            "decomposition_k5",
            Box::new(|| {
                let m = named::complete_graph(5).unwrap();
                Box::new(move || {
                    branch_width_by_decomposition(&m).unwrap();
                })
            }),
        ),
        (
            "separations_u6_12",
            Box::new(|| {
                let m = Matroid::uniform(6, 12).unwrap();
                Box::new(move || {
                    k_separations(&m, 3, false);
                    is_3_connected(&m);
                })
            }),
        ),
        (
            "oracle_wheel5",
            Box::new(|| {
                let m = named::wheel(5).unwrap();
                let n = Matroid::uniform(1, 2).unwrap();
                Box::new(move || {
                    brute_force_oracle(&m, &n, 2).unwrap();
                })
            }),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    for (name, make) in workloads() {
        group.bench_function(format!("{name}/{MODE}"), |b| b.iter_batched(&make, |run| run(), BatchSize::SmallInput));
        #[cfg(feature = "parallel")]
        {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
            group.bench_function(format!("{name}/parallel-one-thread"), |b| {
                b.iter_batched(&make, |run| pool.install(run), BatchSize::SmallInput)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
