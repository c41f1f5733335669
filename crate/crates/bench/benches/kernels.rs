use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mbaa_core::*;
use num_complex::Complex64;

fn pattern(c: &mut Criterion) {
    let config = ArrayConfig::new(128).unwrap();
    let sel = SelectionVector::alternating(128, 64..=115).unwrap();
    let weights = sel.complex_weights();
    let grid = default_angle_grid();
    c.bench_function("sample_pattern N=128, 52 beams, 4096 angles", |b| {
        b.iter(|| sample_pattern(&config, black_box(&weights), &grid, &[1.0]).unwrap())
    });
}

fn wideband(c: &mut Criterion) {
    let s = SquintScenario::reference();
    c.bench_function("wideband map 4096 x 64", |b| b.iter(|| s.gain_map().unwrap()));
}

fn jcas(c: &mut Criterion) {
    let cfg = JcasConfig::new(16, 0, 4, Scheme::Type2, 1000, 0).unwrap();
    let schedule = type2_schedule(&cfg).unwrap();
    let grid = default_angle_grid();
    c.bench_function("type-2 APG, T=1000, 4096 angles", |b| {
        b.iter(|| average_power_gain(black_box(&schedule), &grid).unwrap())
    });
}

fn aoa(c: &mut Criterion) {
    let config = ArrayConfig::new(16).unwrap();
    let model = build_ratio_model(&config, 3, 4096).unwrap();
    let x_d = Complex64::new(0.8, 0.1);
    let x_e = Complex64::new(0.5, -0.2);
    c.bench_function("ratio model build, 4096 points", |b| {
        b.iter(|| build_ratio_model(&config, black_box(3), 4096).unwrap())
    });
    c.bench_function("AoA estimate from two samples", |b| {
        b.iter(|| estimate_from_samples(black_box(x_d), black_box(x_e), &model).unwrap())
    });
    let config = ArrayConfig::new(128).unwrap();
    let scene = PathSet::single(BeamspaceAngle::new(0.3 * PI), Complex64::new(1.0, 0.0));
    c.bench_function("multi-section search N=128", |b| {
        b.iter(|| {
            multisection_search(&config, |s| scene.response(&config, s), &AngularInterval::full_circle(), 2, 4096).unwrap()
        })
    });
}

// the map and APG kernels take hundreds of ms per call
criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = pattern, wideband, jcas, aoa
}
criterion_main!(benches);
