//! Compares the data-parallel and sequential execution modes on the two
//! per-cone workloads: batch compatibility checking and verification of the
//! canonical sequence.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ttm::canonical::verify_euler_sequence_mode;
use ttm::exec::ExecMode;
use ttm::fixtures;
use ttm::klyachko::{check_compatibility_mode, KlyachkoData};
use ttm::scalar::Gauss;
use ttm::OrderFlavor;

fn bench_compatibility(c: &mut Criterion) {
    let fan = fixtures::nontoric_fan();
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let data_sets: Vec<KlyachkoData<Gauss>> = (0..24)
        .map(|_| fixtures::random_compatible_data(&fan, &mut rng, 4, OrderFlavor::Continuous).0)
        .collect();
    let mut group = c.benchmark_group("compatibility_batch");
    for (label, mode) in [
        ("parallel", ExecMode::Parallel),
        ("sequential", ExecMode::Sequential),
    ] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                for data in &data_sets {
                    let result = check_compatibility_mode(&fan, data, mode).unwrap();
                    assert!(result.compatible);
                }
            });
        });
    }
    group.finish();
}

fn bench_euler_sequence(c: &mut Criterion) {
    let fan = fixtures::nontoric_fan();
    let mut group = c.benchmark_group("euler_sequence");
    for (label, mode) in [
        ("parallel", ExecMode::Parallel),
        ("sequential", ExecMode::Sequential),
    ] {
        group.bench_with_input(BenchmarkId::from_parameter(label), &mode, |b, &mode| {
            b.iter(|| {
                let report = verify_euler_sequence_mode(&fan, mode).unwrap();
                assert!(report.ok);
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bench_compatibility, bench_euler_sequence);
criterion_main!(benches);
