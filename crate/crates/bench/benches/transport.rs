use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wigner_core::{
    boost_from_velocity, holonomy_area_integral, sweep_radius, transport_loop,
    wigner_angle_two_boosts, CircleLoop, ExperimentConfig, Velocity3,
};

fn bench_two_boosts(c: &mut Criterion) {
    let v1 = Velocity3::new(0.5, 0.0, 0.0).unwrap();
    let v2 = Velocity3::new(0.0, 0.5, 0.0).unwrap();
    c.bench_function("compose_two_boosts", |b| {
        b.iter(|| boost_from_velocity(black_box(v2)) * boost_from_velocity(black_box(v1)))
    });
    c.bench_function("wigner_angle_two_boosts", |b| {
        b.iter(|| wigner_angle_two_boosts(black_box(v1), black_box(v2)).unwrap())
    });
}

fn bench_loop(c: &mut Criterion) {
    let mut group = c.benchmark_group("transport_loop");
    for steps in [1_000u64, 10_000, 100_000] {
        let circle = CircleLoop::new(0.5, 1, steps).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(steps), &circle, |b, circle| {
            b.iter(|| transport_loop(circle).unwrap())
        });
    }
    group.finish();
}

fn bench_quadrature(c: &mut Criterion) {
    c.bench_function("holonomy_area_integral_1e4", |b| {
        b.iter(|| holonomy_area_integral(black_box(0.5), 10_000).unwrap())
    });
}

fn bench_sweep(c: &mut Criterion) {
    let base = ExperimentConfig::new(2.0e3, 2.0e-3, 887.0);
    let radii: Vec<f64> = (0..64)
        .map(|i| 5e-4 * 20f64.powf(i as f64 / 63.0))
        .collect();
    let durations = [887.0, 1774.0, 2661.0, 3548.0];
    c.bench_function("sweep_64x4", |b| {
        b.iter(|| sweep_radius(&base, &radii, &durations).unwrap())
    });
}

criterion_group!(
    benches,
    bench_two_boosts,
    bench_loop,
    bench_quadrature,
    bench_sweep
);
criterion_main!(benches);
