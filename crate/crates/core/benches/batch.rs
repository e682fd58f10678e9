//! Parallel vs sequential timing for the batch verification suites and the
//! U-resultant interpolation grid.
//!
//! Run with `cargo bench -p zerodim`. The `*_seq` entries always run on one
//! thread; the plain entries use rayon when the `parallel` feature (default)
//! is enabled, so the pairs measure the speedup directly.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use zerodim::groebner::buchberger;
use zerodim::monomial::{MonomialOrder, OrderKind};
use zerodim::numberfield;
use zerodim::parse::parse_poly;
use zerodim::quotient::{QuotientAlgebra, SolveOptions};
use zerodim::uresultant;

fn bench_trace_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_suite_100");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| numberfield::batch_trace_suite(black_box(100), black_box(0)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| numberfield::batch_trace_suite_seq(black_box(100), black_box(0)))
    });
    group.finish();
}

fn bench_parity_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("parity_suite_200");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| numberfield::batch_parity_suite(black_box(200), black_box(0)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| numberfield::batch_parity_suite_seq(black_box(200), black_box(0)))
    });
    group.finish();
}

fn tower_algebra() -> QuotientAlgebra {
    let vars: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let gens = ["x^2 - 2", "y^2 - x", "z^2 - y"]
        .iter()
        .map(|g| parse_poly(g, &vars).unwrap())
        .collect::<Vec<_>>();
    let ord = MonomialOrder::new(OrderKind::GrevLex, 3);
    QuotientAlgebra::new(buchberger(&gens, &ord).unwrap()).unwrap()
}

fn bench_uresultant(c: &mut Criterion) {
    let a = tower_algebra();
    let mut group = c.benchmark_group("uresultant_dim8");
    group.sample_size(10);
    group.bench_function("grid", |b| b.iter(|| uresultant::u_resultant(black_box(&a))));
    group.finish();
}

fn bench_solve(c: &mut Criterion) {
    let a = tower_algebra();
    let opts = SolveOptions::default();
    let mut group = c.benchmark_group("solve_dim8");
    group.sample_size(10);
    group.bench_function("solve_numeric", |b| {
        b.iter(|| a.solve_numeric(black_box(&opts)).unwrap())
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_trace_suite,
    bench_parity_suite,
    bench_uresultant,
    bench_solve
);
criterion_main!(benches);
