use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfim::closed_form::{Param, SpinParams};
use qfim::reproduce::table1_delta;
use qfim::spin::brute_force_max_variance;
use qfim::sweep::{run_phase_sweep_with, run_sweep_with, Constraint, GridRange, PhaseSweepSpec, Sign, SweepSpec};
use qfim::{parse_hypergraph, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn amplitude_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("amplitude_sweep");
    group.sample_size(20);
    for step in [1e-3, 1e-4] {
        let spec = table1_delta(step).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, step), &spec, |b, spec| {
                b.iter(|| run_sweep_with(black_box(spec), exec).unwrap())
            });
        }
    }
    group.finish();
}

fn phase_grid(c: &mut Criterion) {
    let spec = PhaseSweepSpec {
        amplitude: SweepSpec {
            fixed: SpinParams::real(0.5, 0.5, 0.5f64.sqrt(), 0.0).unwrap(),
            vary: Param::Delta,
            range: GridRange::new(0.0, 0.5f64.sqrt(), 5e-3).unwrap(),
            constraint: Constraint {
                dependent: Param::Gamma,
                sign: Sign::Plus,
            },
        },
        phase: Param::Mu,
        phase_range: GridRange::periodic(200),
    };
    let mut group = c.benchmark_group("phase_grid");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| run_phase_sweep_with(black_box(&spec), exec).unwrap())
        });
    }
    group.finish();
}

fn direction_oracle(c: &mut Criterion) {
    let state = parse_hypergraph("4; 1 2 3; 2 4; 1 4").unwrap().build_state().unwrap();
    let mut group = c.benchmark_group("direction_oracle");
    group.sample_size(10);
    for points in [10_000, 100_000] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, points), &points, |b, &points| {
                b.iter(|| brute_force_max_variance(black_box(&state), points, exec))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, amplitude_sweep, phase_grid, direction_oracle);
criterion_main!(benches);
