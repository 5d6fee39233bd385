use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qweyl::sweep::{classification_sweep, sl2_disagreements, vanishing_disagreements, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn classification(c: &mut Criterion) {
    let mut g = c.benchmark_group("classification_sweep_rank5_coeff2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| classification_sweep(5, 2, exec).unwrap())
        });
    }
    g.finish();
}

fn sl2(c: &mut Criterion) {
    let mut g = c.benchmark_group("sl2_oracle_300x60");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sl2_disagreements(300, 60, exec).unwrap())
        });
    }
    g.finish();
}

fn vanishing(c: &mut Criterion) {
    let mut g = c.benchmark_group("qint_vanishing_200x60");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| vanishing_disagreements(200, 60, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, classification, sl2, vanishing);
criterion_main!(benches);
