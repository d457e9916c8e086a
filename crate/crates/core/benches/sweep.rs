use std::f64::consts::{FRAC_PI_2, PI};

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;

use morse_scs::entanglement::{entropy_time_series, entropy_vs_angle_with, state_entropy_spectrum};
use morse_scs::states::build_state;
use morse_scs::wavefunctions::uniform_grid;
use morse_scs::{BeamSplitterConfig, Execution, MorseSystem, ScsFamily, HCL_P};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn params(family: ScsFamily) -> morse_scs::SqueezedStateParams {
    family
        .params(Complex64::new(4.0, 0.0), Complex64::new(0.5, 0.0), HCL_P)
        .unwrap()
}

fn angle_sweep(c: &mut Criterion) {
    let thetas = uniform_grid(0.0, PI, 181);
    let p = params(ScsFamily::EnergyLike);
    let mut group = c.benchmark_group("entropy_vs_angle");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| entropy_vs_angle_with(&p, &thetas, 0.0, exec).unwrap())
        });
    }
    group.finish();
}

fn time_series(c: &mut Criterion) {
    let morse = MorseSystem::new(HCL_P).unwrap();
    let state = build_state(&params(ScsFamily::OscillatorLike)).unwrap();
    let config = BeamSplitterConfig::new(FRAC_PI_2, 0.0);
    let times = uniform_grid(0.0, PI, 257);
    let mut group = c.benchmark_group("entropy_time_series");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| entropy_time_series(&state, &morse, &config, &times, exec).unwrap())
        });
    }
    group.finish();
}

fn spectrum(c: &mut Criterion) {
    let morse = MorseSystem::new(HCL_P).unwrap();
    let state = build_state(&params(ScsFamily::EnergyLike)).unwrap();
    let config = BeamSplitterConfig::balanced();
    let mut group = c.benchmark_group("entropy_spectrum");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| state_entropy_spectrum(&state, &morse, &config, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, angle_sweep, time_series, spectrum);
criterion_main!(benches);
