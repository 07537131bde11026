use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use deepfam_core::search::{classify_pairs, scan_families, ScanConfig, SearchConfig};

fn worker_counts() -> Vec<usize> {
    let max = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut counts = vec![1];
    if cfg!(feature = "parallel") {
        counts.push(max.max(2));
    }
    counts
}

fn bench_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_pairs_t_le_6");
    group.sample_size(10);
    for w in worker_counts() {
        let cfg = SearchConfig {
            t_max: 6,
            ..SearchConfig::default()
        }
        .with_workers(w);
        group.bench_with_input(BenchmarkId::from_parameter(w), &cfg, |b, cfg| {
            b.iter(|| classify_pairs(cfg))
        });
    }
    group.finish();
}

fn bench_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("scan_s3_n_le_60");
    group.sample_size(10);
    for w in worker_counts() {
        let cfg = ScanConfig {
            n_range: 15..=60,
            k1_max: 13,
            workers: w,
            ..ScanConfig::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(w), &cfg, |b, cfg| {
            b.iter(|| scan_families(cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pairs, bench_scan);
criterion_main!(benches);
