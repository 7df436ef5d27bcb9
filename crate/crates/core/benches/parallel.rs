//! Sequential vs rayon-backed execution of the two data-parallel kernels:
//! point counting over a constant extension and the bounded solution search.
//! Build with `--no-default-features` to see `Threads` fall back to the
//! calling thread.

use std::hint::black_box;

use catalan_ff::ffield::{make_curve, CurveRef};
use catalan_ff::{make_field, search, Parallelism, Polynomial, SearchConfig, DEFAULT_BUDGET};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn genus_one() -> CurveRef {
    let k = make_field(5, 1).unwrap();
    make_curve(&k, 2, Polynomial::from_ints(&k, &[1, 1, 0, 1])).unwrap()
}

fn modes() -> Vec<(&'static str, Parallelism)> {
    let threads = std::thread::available_parallelism().map_or(2, |n| n.get().max(2));
    vec![
        ("sequential", Parallelism::Sequential),
        ("threads", Parallelism::Threads(threads)),
    ]
}

fn count_points(c: &mut Criterion) {
    let curve = genus_one();
    let mut group = c.benchmark_group("count_points_f5^8");
    group.sample_size(10);
    for (name, par) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(curve.count_points(8, DEFAULT_BUDGET, par).unwrap()))
        });
    }
    group.finish();
}

fn bounded_search(c: &mut Criterion) {
    let curve = genus_one();
    let mut group = c.benchmark_group("search_genus1_bound6");
    group.sample_size(10);
    for (name, par) in modes() {
        let config = SearchConfig {
            budget: DEFAULT_BUDGET,
            parallelism: par,
        };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| black_box(search(&curve, 2, 3, 6, None, &config).unwrap().solutions.len()))
        });
    }
    group.finish();
}

criterion_group!(benches, count_points, bounded_search);
criterion_main!(benches);
