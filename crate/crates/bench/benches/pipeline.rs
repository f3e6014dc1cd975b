use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sepfaces::construction::{subspace_d, subspace_e, verify_construction};
use sepfaces::linalg::{hermitian_eigen, svd};
use sepfaces::path::{eigenvalue_curves, find_boundary_nu, PathProblem};
use sepfaces::solver::{solve_pair_equation, PairEquationProblem, SearchOptions};
use sepfaces_bench::{hermitian_fixture, reference_params};

fn bench_linalg(c: &mut Criterion) {
    let mut group = c.benchmark_group("linalg");
    for n in [4, 8, 16] {
        let m = hermitian_fixture(n);
        group.bench_with_input(BenchmarkId::new("hermitian_eigen", n), &m, |b, m| {
            b.iter(|| hermitian_eigen(m).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("svd", n), &m, |b, m| b.iter(|| svd(m)));
    }
    group.finish();
}

fn bench_construction(c: &mut Criterion) {
    let p = reference_params();
    let mut group = c.benchmark_group("construction");
    group.sample_size(10);
    group.bench_function("verify_construction", |b| b.iter(|| verify_construction(&p).unwrap()));
    group.finish();
}

fn bench_solver(c: &mut Criterion) {
    let p = reference_params();
    let mut group = c.benchmark_group("solver");
    group.sample_size(10);
    for steps in [50, 100, 200] {
        let search = SearchOptions {
            grid_steps: steps,
            ..SearchOptions::for_params(p.a(), p.b())
        };
        let prob = PairEquationProblem::new(subspace_d(), subspace_e(&p), search).unwrap();
        group.bench_with_input(BenchmarkId::new("grid_steps", steps), &prob, |b, prob| {
            b.iter(|| solve_pair_equation(prob).unwrap())
        });
    }
    group.finish();
}

fn bench_path(c: &mut Criterion) {
    let prob = PathProblem::for_params(&reference_params()).unwrap();
    let mut group = c.benchmark_group("path");
    group.sample_size(10);
    group.bench_function("find_boundary_nu", |b| b.iter(|| find_boundary_nu(&prob).unwrap()));
    group.bench_function("eigenvalue_curves_161", |b| {
        b.iter(|| eigenvalue_curves(&prob, 0.0, 1.6, 161).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_linalg, bench_construction, bench_solver, bench_path);
criterion_main!(benches);
