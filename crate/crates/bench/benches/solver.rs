use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dgtime::dgsolver::solve_monolithic;
use dgtime::systems::{build_heat_1d, stokes3, HeatSolution};
use dgtime::{
    project_slab, run_study, solve, DVector, NormSelection, ProjectionSpec, SolverOptions, StudySpec, TimeMesh,
};
use std::hint::black_box;

fn projection(c: &mut Criterion) {
    let mut g = c.benchmark_group("projection");
    for q in [2, 4, 6] {
        let spec = ProjectionSpec::with_default_quadrature(q).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(q), &spec, |b, spec| {
            b.iter(|| project_slab(&|t| DVector::from_element(3, t.sin()), 0.0, black_box(0.1), spec).unwrap())
        });
    }
    g.finish();
}

fn sequential(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    let heat = build_heat_1d(16, &HeatSolution::sin4t()).unwrap();
    let saddle = stokes3();
    for q in [1, 2, 3] {
        let mesh = TimeMesh::uniform(1.0, 128).unwrap();
        let opts = SolverOptions::new(q);
        g.bench_with_input(BenchmarkId::new("heat1d-N128", q), &q, |b, _| {
            b.iter(|| solve(&heat, &mesh, &opts).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("stokes3-N128", q), &q, |b, _| {
            b.iter(|| solve(&saddle, &mesh, &opts).unwrap())
        });
    }
    g.finish();
}

fn monolithic(c: &mut Criterion) {
    let mut g = c.benchmark_group("sequential-vs-monolithic");
    let sys = stokes3();
    let mesh = TimeMesh::uniform(1.0, 16).unwrap();
    let opts = SolverOptions::new(2);
    g.bench_function("sequential", |b| b.iter(|| solve(&sys, &mesh, &opts).unwrap()));
    g.bench_function("monolithic", |b| b.iter(|| solve_monolithic(&sys, &mesh, &opts).unwrap()));
    g.finish();
}

fn study(c: &mut Criterion) {
    let mut g = c.benchmark_group("study");
    g.sample_size(10);
    for threads in [1, 4] {
        let spec = StudySpec {
            problem: "stokes3".into(),
            system: stokes3(),
            q: 2,
            ns: vec![8, 16, 32, 64, 128],
            use_projection: true,
            norms: NormSelection::all(),
            t_end: 1.0,
            threads: Some(threads),
        };
        g.bench_with_input(BenchmarkId::new("stokes3-threads", threads), &spec, |b, spec| {
            b.iter(|| run_study(spec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, projection, sequential, monolithic, study);
criterion_main!(benches);
