use hc_core::alpha::{alpha_closed, alpha_nested};
use hc_core::derivation::monomial_consistency;
use hc_core::rational::{exact_sqrt, q, qf, Q};
use hc_core::sequence::is_special_family;
use hc_core::{
    bracket, epsilons_from_sequence, seq_family, seq_hermite, seq_order2, validate,
    GoverningSequence, Polynomial, PolynomialSystem,
};
use proptest::prelude::*;

const LEN: usize = 12;

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Q> {
    (lo..=hi, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn interleaved(v2: Q, v3: Q) -> GoverningSequence {
    // v1 = 1; v_n = v_{n-4} + v3 (v_{n-2} - v_{n-4})
    let mut v = vec![q(1), q(1), v2, v3.clone()];
    while v.len() <= LEN {
        let n = v.len();
        let next = &v[n - 4] + &v3 * (&v[n - 2] - &v[n - 4]);
        v.push(next);
    }
    GoverningSequence::new(v, qf(1, 2)).unwrap()
}

/// Sequences satisfying the compatibility relation, family and non-family.
fn compatible_sequence() -> impl Strategy<Value = GoverningSequence> {
    prop_oneof![
        (rational(4, 12), rational(0, 12), rational(1, 8)).prop_map(|(v1, extra, b0)| {
            let v1 = v1.clone();
            let v2 = &v1 + extra;
            seq_family(&v1, &v2, b0, LEN).unwrap()
        }),
        (rational(4, 16), rational(1, 8))
            .prop_filter_map("positive", |(v1, b0)| seq_order2(&v1, LEN, b0).ok()),
        (rational(5, 16), rational(5, 16)).prop_map(|(v2, v3)| interleaved(v2, v3)),
    ]
    .prop_filter("compatible", |s| validate(s).unwrap().compatible())
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-6i64..=6, 0..8)
        .prop_map(|c| Polynomial::new(c.into_iter().map(q).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn derivation_is_linear(seq in compatible_sequence(), p in small_poly(), r in small_poly(),
                            a in rational(-5, 5), b in rational(-5, 5)) {
        let op = epsilons_from_sequence(&seq, LEN).unwrap();
        let lhs = op.apply(&(&p.scale(&a) + &r.scale(&b))).unwrap();
        let rhs = &op.apply(&p).unwrap().scale(&a) + &op.apply(&r).unwrap().scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_matches_monomial_rule(seq in compatible_sequence(), p in small_poly()) {
        let op = epsilons_from_sequence(&seq, LEN).unwrap();
        prop_assert!(monomial_consistency(&op));
        prop_assert_eq!(op.apply(&p).unwrap(), op.apply_monomial_rule(&p).unwrap());
    }

    #[test]
    fn a_coefficient_identities(seq in compatible_sequence()) {
        let op = epsilons_from_sequence(&seq, LEN).unwrap();
        for n in 2..=LEN {
            prop_assert_eq!(op.a_coefficient(n, 1).unwrap(), seq.v(n - 1).clone());
            prop_assert_eq!(op.a_coefficient(n, 2).unwrap(), seq.v(n - 1) - q(n as i64));
        }
    }

    #[test]
    fn coefficient_routes_agree(seq in compatible_sequence()) {
        let sys = PolynomialSystem::new(seq).unwrap();
        for n in 0..=LEN {
            let rec = sys.psi(n).unwrap();
            prop_assert_eq!(&rec, &sys.psi_coeffs(n).unwrap());
            prop_assert_eq!(&rec, &sys.psi_coeffs_nested(n).unwrap());
        }
        for n in 1..=LEN {
            prop_assert!(sys.lowering_check(n).unwrap().is_zero());
        }
    }

    #[test]
    fn alpha_routes_and_recurrence(seq in compatible_sequence()) {
        let br = bracket(&seq).unwrap();
        let alpha = |m: usize, n: usize| -> Q {
            if m == 0 { q(1) } else if 2 * m > n { q(0) } else { alpha_nested(&br, m, n).unwrap() }
        };
        for n in 1..=LEN {
            for m in 1..=n / 2 {
                prop_assert_eq!(alpha(m, n), alpha_closed(&seq, &br, m, n).unwrap());
                if n >= 3 {
                    let rhs = br.get(n - 1) * alpha(m - 1, n - 2) + alpha(m, n - 1);
                    prop_assert_eq!(alpha(m, n), rhs);
                }
            }
        }
    }

    #[test]
    fn gamma_cross_relations(seq in compatible_sequence()) {
        let sys = PolynomialSystem::new(seq.clone()).unwrap();
        let br = sys.brackets();
        let g2 = |n: usize| sys.gamma().square(n).clone();
        let b0_sq = seq.b0_squared();
        prop_assert_eq!(g2(1), q(1) / b0_sq);
        let op = sys.operator();
        let e12 = op.epsilon(1) + op.epsilon(2);
        prop_assert!(e12 >= q(0));
        prop_assert_eq!(b0_sq * br.get(2) * g2(2) / q(4), &e12 * &e12);
        let alpha = |m: usize, n: usize| alpha_nested(br, m, n).unwrap();
        for p in 1..(LEN - 1) / 2 {
            let ratio = alpha(p, 2 * p + 1) / br.odd_double_factorial(p);
            prop_assert_eq!(br.get(2 * p + 1) * g2(2 * p + 1), &ratio * &ratio * g2(1));
            let ratio = alpha(p, 2 * p + 2) / alpha(p, 2 * p + 1);
            prop_assert_eq!(br.get(2 * p + 2) * g2(2 * p + 2), &ratio * &ratio * br.get(2) * g2(2));
        }
    }

    #[test]
    fn gamma_times_b_is_v(seq in compatible_sequence()) {
        let sys = PolynomialSystem::new(seq.clone()).unwrap();
        for n in 1..=LEN {
            let prod = exact_sqrt(&(sys.gamma().square(n) * sys.b_square(n as isize - 1))).unwrap();
            prop_assert_eq!(&prod, seq.v(n - 1));
        }
    }

    #[test]
    fn family_decision_stable_under_extension(v1 in rational(4, 12), extra in rational(0, 12), len in 3usize..10) {
        let v2 = &v1 + extra;
        let short = seq_family(&v1, &v2, q(1), len).unwrap();
        let long = seq_family(&v1, &v2, q(1), 2 * len).unwrap();
        prop_assert_eq!(is_special_family(&short), is_special_family(&long));
        prop_assert!(is_special_family(&long).is_some());
    }
}

#[test]
fn hermite_coincidences() {
    for len in [1, 5, 20] {
        let h = seq_hermite(len).unwrap();
        assert_eq!(
            seq_family(&q(2), &q(3), h.b0_squared().clone(), len).unwrap(),
            h
        );
        assert_eq!(seq_order2(&q(2), len, h.b0_squared().clone()).unwrap(), h);
    }
}
