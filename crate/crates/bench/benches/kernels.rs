use std::f64::consts::{FRAC_PI_2, PI};
use std::hint::black_box;

use condlab_core::{
    bell_covariation_check, decide_feasibility, random_space_and_variables, run_protocol, scan_violations,
    targets_from_quantum, wigner_joint_check, ProtocolSpec,
};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn inequalities(c: &mut Criterion) {
    let mut group = c.benchmark_group("classical_checks");
    for atoms in [4usize, 16] {
        let t = random_space_and_variables(11, atoms);
        group.bench_with_input(BenchmarkId::new("bell", atoms), &t, |b, t| {
            b.iter(|| bell_covariation_check(&t.space, &t.a, &t.b, &t.c).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("wigner_joint", atoms), &t, |b, t| {
            b.iter(|| wigner_joint_check(&t.space, &t.a, &t.b, &t.c).unwrap())
        });
    }
    group.finish();
}

fn feasibility(c: &mut Criterion) {
    let infeasible = targets_from_quantum(0.0, 6.0 * PI / 9.0, 2.0 * PI / 9.0, 1_000_000).unwrap();
    let feasible = targets_from_quantum(0.0, 3.0 * PI, PI, 1_000_000).unwrap();
    c.bench_function("decide_feasibility/infeasible", |b| b.iter(|| decide_feasibility(black_box(&infeasible))));
    c.bench_function("decide_feasibility/feasible", |b| b.iter(|| decide_feasibility(black_box(&feasible))));
}

fn scan(c: &mut Criterion) {
    c.bench_function("scan_violations/1801", |b| b.iter(|| scan_violations(0.0, black_box(FRAC_PI_2), 1801)));
}

fn protocol(c: &mut Criterion) {
    let spec = ProtocolSpec::from_angles(0.3, 1.1, 100_000, 5).unwrap();
    c.bench_function("run_protocol/1e5", |b| b.iter(|| run_protocol(black_box(&spec)).unwrap()));
}

criterion_group!(benches, inequalities, feasibility, scan, protocol);
criterion_main!(benches);
