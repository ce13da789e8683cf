use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use driven_jcm::observables::{epr_uncertainty, sv_subdeterminant};
use driven_jcm::{
    AnalyticModel, Execution, InitialFields, ModelParams, MomentOrder, TimeGrid, Truncation,
};
use num_complex::Complex64;

fn model() -> AnalyticModel {
    let params = ModelParams::with_relative_detuning(3.0, 1.0, 6.0).unwrap();
    let fields = InitialFields::new(&params, Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0));
    AnalyticModel::new(params, fields, Truncation::default())
}

fn sweeps(c: &mut Criterion) {
    let model = model();
    let grid = TimeGrid::linspace(50.0, 500).unwrap();
    // warm the kernel cache so only evaluation is timed
    model
        .sweep(&grid, Execution::Sequential, |s| {
            Ok((epr_uncertainty(s)?, sv_subdeterminant(s)?))
        })
        .unwrap();

    let mut group = c.benchmark_group("observables_500");
    group.sample_size(20);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| {
                b.iter(|| {
                    model
                        .sweep(&grid, exec, |s| {
                            Ok((epr_uncertainty(s)?.i_ab, sv_subdeterminant(s)?))
                        })
                        .unwrap()
                })
            },
        );
    }
    group.finish();

    let order = MomentOrder::new(1, 1, 1, 1).unwrap();
    let mut group = c.benchmark_group("moment_series_500");
    group.sample_size(20);
    for exec in [Execution::Sequential, Execution::Parallel] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{exec:?}")),
            &exec,
            |b, &exec| b.iter(|| model.series(order, &grid, exec).unwrap()),
        );
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
