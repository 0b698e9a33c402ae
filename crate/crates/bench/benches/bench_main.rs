use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use superpath::capacity::two_state_lower_bound;
use superpath::channels::physical_z_extension;
use superpath::numerics::{hermitian_eig, ComplexMatrix};
use superpath::routing::{compose_branch, superpose, PathState, RouteSpec};

fn eigensolver(c: &mut Criterion) {
    let a = ComplexMatrix::from_fn(8, 8, |i, j| {
        let (x, y) = (i as f64, j as f64);
        superpath::numerics::c64((x + y).cos(), if i == j { 0.0 } else { (x - y).sin() })
    });
    c.bench_function("hermitian_eig 8x8", |b| b.iter(|| hermitian_eig(black_box(&a)).unwrap()));
}

fn routes(c: &mut Criterion) {
    let ext = physical_z_extension(0.5).unwrap();
    let spec = RouteSpec::identical(&ext, 20, 0.0).unwrap();
    c.bench_function("compose_branch 20 links", |b| b.iter(|| compose_branch(black_box(&spec)).unwrap()));
}

fn bounds(c: &mut Criterion) {
    let ext = physical_z_extension(0.5).unwrap();
    let branch = compose_branch(&RouteSpec::identical(&ext, 5, 0.0).unwrap()).unwrap();
    let channel = superpose(&branch, &branch, &PathState::plus(), 1.0).unwrap();
    let mut group = c.benchmark_group("two_state_lower_bound");
    group.sample_size(20);
    group.bench_function("superposed Z, n=5", |b| b.iter(|| two_state_lower_bound(black_box(&channel))));
    group.finish();
}

criterion_group!(benches, eigensolver, routes, bounds);
criterion_main!(benches);
