//! Sequential vs rayon execution of the two data-parallel kernels: the
//! dephased sign-matrix enumeration and local numerical range sampling.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ldoi::discriminate::local_range_sample;
use ldoi::hadamardness::exhaustive_min_with;
use ldoi::par::Execution;
use ldoi::unitary::random_unitary;
use ldoi::{Field, InvarianceClass};

fn executions() -> [(&'static str, Execution); 2] {
    [
        ("sequential", Execution::Sequential),
        ("parallel", Execution::Parallel { workers: None }),
    ]
}

fn hadamardness(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_min");
    group.sample_size(10);
    for d in [4, 5] {
        for (name, exec) in executions() {
            group.bench_with_input(BenchmarkId::new(name, d), &d, |b, &d| {
                b.iter(|| exhaustive_min_with(d, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn local_range(c: &mut Criterion) {
    let mut group = c.benchmark_group("local_range_sample");
    group.sample_size(10);
    for d in [4, 16] {
        let t = random_unitary(d, InvarianceClass::Ldoi, Field::Complex, 7).unwrap();
        for (name, exec) in executions() {
            group.bench_with_input(BenchmarkId::new(name, d), &t, |b, t| {
                b.iter(|| local_range_sample(t, 20_000, 3, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, hadamardness, local_range);
criterion_main!(benches);
