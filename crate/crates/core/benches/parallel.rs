use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use germlab::input::parse_poly;
use germlab::invariants::{analyze_poly, canonical_invariant, enumerate_invariants, realize};
use germlab::oracle::parity_by_projection;
use germlab::par::{self, Execution};
use germlab::puiseux::real_branches;

const CURVES: &[&str] = &[
    "y*(y^2 - x^3)",
    "(y^2 - x^3)*(x^2 - y^3)",
    "y*(y - x^2)*(y + x^3)",
    "x^4 + y^4 - 3*x^2*y^2 - y^5",
    "(x^2 + y^2)*(y^2 - x^3)",
];

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn round_trip(c: &mut Criterion) {
    let all = enumerate_invariants(2, 2);
    let mut g = c.benchmark_group("round_trip");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                par::map(exec, &all, |a| {
                    let back = canonical_invariant(&real_branches(&realize(a)).unwrap()).unwrap();
                    back == *a
                })
            })
        });
    }
    g.finish();
}

fn analyze(c: &mut Criterion) {
    let polys: Vec<_> = CURVES.iter().map(|s| parse_poly(s).unwrap()).collect();
    let mut g = c.benchmark_group("analyze");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                for f in &polys {
                    black_box(analyze_poly(f, exec).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn oracle(c: &mut Criterion) {
    let f = parse_poly("y*(y - x^2)*(y + x^3)").unwrap();
    let mut g = c.benchmark_group("oracle");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| black_box(parity_by_projection(&f, 5, exec).unwrap()))
        });
    }
    g.finish();
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).warm_up_time(Duration::from_millis(500));
    targets = round_trip, analyze, oracle
}
criterion_main!(benches);
