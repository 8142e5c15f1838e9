//! Sequential against data-parallel execution for the exhaustive workloads.
//! Without the `parallel` feature both arms run sequentially.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use areaseq::{catalan, enumerate, psi, psi_inverse, qt_matrix, verify, Check, Execution, LabConfig, Statistic};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn config(execution: Execution) -> LabConfig {
    LabConfig { execution, ..LabConfig::default() }
}

fn bench_matrix(c: &mut Criterion) {
    let mut group = c.benchmark_group("qt_matrix");
    group.sample_size(10);
    for n in [10, 11] {
        group.throughput(Throughput::Elements(catalan(n).unwrap()));
        for (label, execution) in MODES {
            let cfg = config(execution);
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| qt_matrix(n, Statistic::Dinv, Statistic::Area, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_all");
    group.sample_size(10);
    let n = 9;
    group.throughput(Throughput::Elements(catalan(n).unwrap()));
    for (label, execution) in MODES {
        let cfg = config(execution);
        group
            .bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| b.iter(|| verify(n, &Check::ALL, &cfg).unwrap()));
    }
    group.finish();
}

fn bench_psi(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi");
    let words: Vec<_> = enumerate(8).collect();
    group.throughput(Throughput::Elements(words.len() as u64));
    group.bench_function("forward_n8", |b| b.iter(|| words.iter().map(|w| psi(black_box(w))).collect::<Vec<_>>()));
    let images: Vec<_> = words.iter().map(psi).collect();
    group.bench_function("inverse_n8", |b| {
        b.iter(|| images.iter().map(|w| psi_inverse(black_box(w))).collect::<Vec<_>>())
    });
    group.finish();
}

criterion_group!(benches, bench_matrix, bench_verify, bench_psi);
criterion_main!(benches);
