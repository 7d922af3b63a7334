use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use hc_core::measure::{orthonormality_check, MeasureSpec};
use hc_core::oscillator::{build_operators, commutator_check};
use hc_core::quadrature::{integrate, Tolerance};
use hc_core::rational::q;
use hc_core::{seq_classical, seq_family, PolynomialSystem};

fn system_build(c: &mut Criterion) {
    let seq = seq_classical(&q(1), 40).unwrap();
    c.bench_function("system_build_classical_40", |b| {
        b.iter(|| PolynomialSystem::new(black_box(seq.clone())).unwrap())
    });
}

fn lowering(c: &mut Criterion) {
    let sys = PolynomialSystem::new(seq_family(&q(1), &q(5), q(1), 25).unwrap()).unwrap();
    c.bench_function("lowering_check_n1_to_25", |b| {
        b.iter(|| {
            for n in 1..=25 {
                assert!(sys.lowering_check(black_box(n)).unwrap().is_zero());
            }
        })
    });
}

fn quadrature(c: &mut Criterion) {
    c.bench_function("gk15_singular_weight", |b| {
        b.iter(|| {
            integrate(
                |x: f64| x.powf(-0.5) * (-x * x).exp(),
                0.0,
                black_box(10.0),
                Tolerance::default(),
            )
            .unwrap()
        })
    });
    let sys = PolynomialSystem::new(seq_classical(&q(1), 14).unwrap()).unwrap();
    let spec = MeasureSpec::new(1.0, 1.0).unwrap();
    c.bench_function("gram_matrix_12", |b| {
        b.iter(|| orthonormality_check(&sys, &spec, black_box(12)).unwrap())
    });
}

fn operators(c: &mut Criterion) {
    let sys = PolynomialSystem::new(seq_classical(&q(2), 50).unwrap()).unwrap();
    c.bench_function("commutator_dim40", |b| {
        b.iter(|| commutator_check(&build_operators(&sys, black_box(40)).unwrap(), 4).unwrap())
    });
}

criterion_group!(benches, system_build, lowering, quadrature, operators);
criterion_main!(benches);
