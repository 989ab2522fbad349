use criterion::{black_box, criterion_group, criterion_main, Criterion};
use liesbe::curvature::{pinching_estimate, MetricFrame};

fn pinching(c: &mut Criterion) {
    let frame = MetricFrame::new("J3".parse().unwrap(), 0.1).unwrap();
    let mut g = c.benchmark_group("pinching");
    g.sample_size(20);
    g.bench_function("j3_4096", |b| b.iter(|| pinching_estimate(black_box(&frame), 4096, 2, 1)));
    let frame = MetricFrame::new("C1:1,J1,J1".parse().unwrap(), 0.1).unwrap();
    g.bench_function("c1_j1_j1_4096", |b| b.iter(|| pinching_estimate(black_box(&frame), 4096, 2, 1)));
    g.finish();
}

criterion_group!(benches, pinching);
criterion_main!(benches);
