use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use sparsegraph_bench::workloads;
use sparsegraph_core::overhead::BenchOp;
use sparsegraph_core::Semiring;

fn kernels(c: &mut Criterion) {
    for sr in [Semiring::arith_real(), Semiring::min_plus()] {
        let loads = workloads(&sr).expect("workload");
        for op in BenchOp::ALL {
            let mut group = c.benchmark_group(format!("{}/{}", op.name(), sr.name()));
            group.sample_size(20);
            for w in &loads {
                group.throughput(Throughput::Elements(w.edges() as u64));
                group.bench_with_input(BenchmarkId::new("api", w.scale), w, |b, w| {
                    b.iter(|| w.run_api(op).unwrap())
                });
                group.bench_with_input(BenchmarkId::new("direct", w.scale), w, |b, w| {
                    b.iter(|| w.run_direct(op).unwrap())
                });
            }
            group.finish();
        }
    }
}

criterion_group!(benches, kernels);
criterion_main!(benches);
