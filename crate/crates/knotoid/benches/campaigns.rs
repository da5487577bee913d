//! Data-parallel campaign throughput: rayon fan-out versus the sequential
//! fallback on the same sweep. With `--no-default-features` both sides run
//! sequentially and should coincide.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use knotoid::enumerate::{
    verify_prime_machinery_campaign, verify_prime_machinery_campaign_sequential,
    verify_theorem_campaign, verify_theorem_campaign_sequential,
};

fn bench_theorem_campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("theorem_campaign");
    for n in [3u32, 4] {
        group.bench_function(format!("parallel/n{n}"), |b| {
            b.iter_batched(|| n, verify_theorem_campaign, BatchSize::SmallInput)
        });
        group.bench_function(format!("sequential/n{n}"), |b| {
            b.iter_batched(|| n, verify_theorem_campaign_sequential, BatchSize::SmallInput)
        });
    }
    group.finish();
}

fn bench_machinery_campaign(c: &mut Criterion) {
    let mut group = c.benchmark_group("machinery_campaign");
    group.sample_size(10);
    for n in [3u32, 4] {
        group.bench_function(format!("parallel/n{n}"), |b| {
            b.iter_batched(|| n, verify_prime_machinery_campaign, BatchSize::SmallInput)
        });
        group.bench_function(format!("sequential/n{n}"), |b| {
            b.iter_batched(
                || n,
                verify_prime_machinery_campaign_sequential,
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

criterion_group!(benches, bench_theorem_campaign, bench_machinery_campaign);
criterion_main!(benches);
