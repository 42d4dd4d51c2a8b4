use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rs_velocity_core::verify::{run_property, SuiteConfig};
use rs_velocity_core::*;

const C: LightSpeed = LightSpeed::NATURAL;

fn maps(c: &mut Criterion) {
    let mut g = c.benchmark_group("maps");
    for a in [0.3, 5.0, 30.0] {
        let u = UnboundedVelocity::new(a).unwrap();
        g.bench_with_input(BenchmarkId::new("to_bounded", a), &u, |b, &u| {
            b.iter(|| to_bounded(black_box(u), C))
        });
    }
    for v in [0.3, 0.999999] {
        let v = BoundedVelocity::new(v, C).unwrap();
        g.bench_with_input(BenchmarkId::new("to_unbounded", v.value()), &v, |b, &v| {
            b.iter(|| to_unbounded(black_box(v), C))
        });
    }
    g.finish();
}

fn composition(c: &mut Criterion) {
    let mut g = c.benchmark_group("composition");
    for (u, v) in [(0.3, -0.4), (0.9999, 0.9998)] {
        let (u, v) = (
            BoundedVelocity::new(u, C).unwrap(),
            BoundedVelocity::new(v, C).unwrap(),
        );
        g.bench_function(
            format!("einstein_relative/{}_{}", u.value(), v.value()),
            |b| b.iter(|| einstein_relative(black_box(u), black_box(v), C)),
        );
    }
    g.finish();
}

fn definitions(c: &mut Criterion) {
    let obs = ObservationRecord::new(0.5, 1.0, 1e3).unwrap();
    let mut g = c.benchmark_group("definitions");
    g.bench_function("def2_velocity", |b| {
        b.iter(|| def2_velocity(black_box(&obs), C))
    });
    g.bench_function("def3_velocity", |b| {
        b.iter(|| def3_velocity(black_box(&obs), C))
    });
    g.bench_function("convergence_scan", |b| {
        b.iter(|| {
            convergence_scan(
                FiniteDefinition::Def2,
                black_box(&obs),
                C,
                &[1e2, 1e3, 1e4, 1e5],
            )
        })
    });
    g.finish();
}

fn suite(c: &mut Criterion) {
    let config = SuiteConfig {
        cases: 1_000,
        ..SuiteConfig::default()
    };
    let mut g = c.benchmark_group("verify");
    for name in ["round_trip", "homomorphism", "four_quadrant"] {
        g.bench_function(name, |b| b.iter(|| run_property(name, black_box(&config))));
    }
    g.finish();
}

criterion_group!(benches, maps, composition, definitions, suite);
criterion_main!(benches);
