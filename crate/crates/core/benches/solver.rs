//! Sequential against data-parallel eigensolves on the same operators.
//!
//! Build with `--no-default-features` to see the sequential fallback alone; both arms then run
//! the same code.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use laakso_core::numeric::{discretize, solve_lowest_with, Potential, SolveOptions};
use laakso_core::{build_graph, JSequence, Parallelism};

fn solves(c: &mut Criterion) {
    let seq = JSequence::periodic(vec![2, 3]).unwrap();
    let mut group = c.benchmark_group("solve_lowest");
    group.sample_size(10);
    for (level, potential, count) in [
        (4, "square-well", 12),
        (5, "square-well", 16),
        (5, "parabolic", 4),
    ] {
        let graph = build_graph(&seq, level, None).unwrap();
        let op = discretize(&graph, 7, &Potential::from_name(potential, 1e15).unwrap()).unwrap();
        for parallelism in [Parallelism::Sequential, Parallelism::Parallel] {
            let opts = SolveOptions {
                parallelism,
                dense_threshold: 0,
                retain_vectors: false,
                ..SolveOptions::default()
            };
            let id = BenchmarkId::new(
                format!("{parallelism:?}"),
                format!("F{level}-{potential}-dim{}", op.dimension()),
            );
            group.bench_function(id, |b| b.iter(|| solve_lowest_with(&op, count, &opts).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, solves);
criterion_main!(benches);
