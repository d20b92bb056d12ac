//! Batch augmentation throughput, parallel vs sequential, on the standard
//! 32x112x112x3 workload. Tracks the clips/s figure the acceptance report
//! prints, with finer-grained kernels alongside for regressions.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use vidaug::{
    apply_pixel_op, augment_batch, static_schedule, Clip, MixKind, OpKind, PolicySpec,
    PolicyVariant, RngStream,
};

fn synth_clip(seed: u64, n: usize, h: usize, w: usize, c: usize) -> Clip {
    let mut s = RngStream::new(seed);
    let data = (0..n * h * w * c).map(|_| (s.next_u64() & 0xff) as u8).collect();
    Clip::from_raw(n, h, w, c, data).unwrap()
}

fn batch(clips: usize) -> Vec<(Clip, u32)> {
    (0..clips)
        .map(|i| (synth_clip(i as u64, 32, 112, 112, 3), i as u32))
        .collect()
}

fn bench_batch(c: &mut Criterion) {
    let mut group = c.benchmark_group("augment_batch");
    group.sample_size(10);
    for &clips in &[8usize, 32] {
        let items = batch(clips);
        let spec = PolicySpec {
            variant: PolicyVariant::RaTpp,
            num_ops: 1,
            magnitude: 0.5,
            seed: 3,
            ..Default::default()
        };
        group.throughput(Throughput::Elements(clips as u64));
        group.bench_with_input(BenchmarkId::new("parallel", clips), &items, |b, items| {
            b.iter(|| black_box(augment_batch(items, &spec, true).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", clips), &items, |b, items| {
            b.iter(|| black_box(augment_batch(items, &spec, false).unwrap()))
        });
    }
    group.finish();
}

fn bench_mix_stage(c: &mut Criterion) {
    let mut group = c.benchmark_group("mix_stage");
    group.sample_size(10);
    let items = batch(16);
    for kind in [MixKind::FloatCutMix, MixKind::FadeMixUp, MixKind::FloatFrameCutMixUp] {
        let spec = PolicySpec {
            variant: PolicyVariant::RaTpp,
            num_ops: 1,
            mix: Some(kind),
            seed: 7,
            ..Default::default()
        };
        group.throughput(Throughput::Elements(16));
        group.bench_with_input(BenchmarkId::new("parallel", kind.name()), &items, |b, items| {
            b.iter(|| black_box(augment_batch(items, &spec, true).unwrap()))
        });
        group.bench_with_input(BenchmarkId::new("sequential", kind.name()), &items, |b, items| {
            b.iter(|| black_box(augment_batch(items, &spec, false).unwrap()))
        });
    }
    group.finish();
}

fn bench_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("pixel_op_single_clip");
    group.sample_size(20);
    let clip = synth_clip(9, 32, 112, 112, 3);
    let curve = static_schedule(0.8, 32).unwrap();
    for op in [OpKind::Rotate, OpKind::Equalise, OpKind::Contrast, OpKind::Posterise] {
        group.bench_function(op.name(), |b| {
            b.iter(|| {
                let mut s = RngStream::new(1);
                black_box(apply_pixel_op(&clip, op, &curve, &mut s).unwrap())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_batch, bench_mix_stage, bench_kernels);
criterion_main!(benches);
