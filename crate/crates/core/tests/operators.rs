use hc_core::measure::{moment_table, orthonormality_check, MeasureSpec};
use hc_core::oscillator::{
    build_operators, commutator_check, spectrum_check, square_lowering_identity,
};
use hc_core::rational::{q, qf, to_f64};
use hc_core::{seq_classical, seq_family, seq_generalized_hermite, PolynomialSystem};
use proptest::prelude::*;

fn deviations(sys: &PolynomialSystem, dim: usize) -> (f64, f64, f64) {
    let ops = build_operators(sys, dim).unwrap();
    let c = commutator_check(&ops, 4).unwrap();
    let s = spectrum_check(&ops, sys, 4).unwrap();
    let l = square_lowering_identity(&ops, sys, 4).unwrap();
    (c.max_deviation, s.max_deviation.max(s.off_diagonal), l)
}

#[test]
fn doubling_dimension_keeps_interior_deviations() {
    for seq in [
        seq_classical(&q(2), 90).unwrap(),
        seq_family(&q(1), &q(5), q(1), 90).unwrap(),
    ] {
        let sys = PolynomialSystem::new(seq).unwrap();
        let small = deviations(&sys, 40);
        let large = deviations(&sys, 80);
        let floor = 1e-12;
        assert!(large.0 <= 2.0 * small.0.max(floor));
        assert!(large.1 <= 2.0 * small.1.max(floor));
        assert!(large.2 <= 2.0 * small.2.max(floor));
    }
}

#[test]
fn moments_for_half_integer_exponent() {
    for alpha in [qf(1, 2), q(1), q(2)] {
        let sys =
            PolynomialSystem::new(seq_generalized_hermite(&qf(1, 2), &alpha, 12).unwrap()).unwrap();
        for row in moment_table(&sys, 16).unwrap() {
            assert!(row.relative_spread() < 1e-8, "alpha {alpha}, k {}", row.k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn family_members_are_orthonormal(v1 in 1i64..6, extra in 1i64..8, b0 in 1i64..4) {
        let v2 = q(v1 + extra);
        let seq = seq_family(&q(v1), &v2, qf(b0, 2), 12).unwrap();
        let sys = PolynomialSystem::new(seq).unwrap();
        let w = sys.weight_parameters().unwrap();
        let spec = MeasureSpec::new(to_f64(&w.gamma), to_f64(&w.alpha)).unwrap();
        let r = orthonormality_check(&sys, &spec, 10).unwrap();
        prop_assert!(r.max_deviation < 1e-8);
        prop_assert!(r.asymmetry < 1e-12);
        prop_assert!(r.recurrence_deviation < 1e-8);
    }
}
