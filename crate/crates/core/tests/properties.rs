use lerch_core::oracle::digamma;
use lerch_core::{
    bernoulli_poly, hurwitz_zeta_neg, lerch_partial_closed, lerch_partial_direct, trig_partial_closed,
    trig_partial_direct, BClass, ComplexValue, QuadConfig, Regime, SumParams, TrigKind,
};
use proptest::prelude::*;

fn c(re: f64) -> ComplexValue {
    ComplexValue::new(re, 0.0)
}

fn kind() -> impl Strategy<Value = TrigKind> {
    prop::sample::select(TrigKind::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn direct_sums_are_additive_in_n(kind in kind(), b in 0.1f64..0.9, m in 1.0f64..6.0, k in 1u32..5, n1 in 1u64..30, n2 in 1u64..30) {
        let p = |b: f64, n| SumParams { a: c(1.0), b: c(b), m: c(m), k, n };
        // terms depend on j + b only, so the last n2 terms are the sum at b + n1
        for sum in [
            |q: &SumParams, kind| trig_partial_direct(kind, q).unwrap(),
            |q: &SumParams, _| lerch_partial_direct(q).unwrap(),
        ] {
            let whole = sum(&p(b, n1 + n2), kind);
            let split = sum(&p(b, n1), kind) + sum(&p(b + n1 as f64, n2), kind);
            prop_assert!((whole - split).norm() <= 1e-12 * whole.norm().max(1.0), "{whole} vs {split}");
        }
    }

    #[test]
    fn closed_forms_match_direct_sums(kind in kind(), a in 0.5f64..2.0, b in 0.1f64..1.5, m in 1.0f64..6.0, k in 1u32..5, n in 1u64..60) {
        let p = SumParams { a: c(a), b: c(b), m: c(m), k, n };
        let direct = trig_partial_direct(kind, &p).unwrap();
        let closed = trig_partial_closed(kind, &p, &QuadConfig::default()).unwrap().value;
        prop_assert!((closed - direct).norm() <= 1e-8 * direct.norm().max(1.0), "{closed} vs {direct}");
    }

    #[test]
    fn exponential_closed_form_matches_direct_sum(b in 0.1f64..1.5, m in -4.0f64..-0.5, k in 1u32..5, n in 1u64..60) {
        let p = SumParams { a: c(1.0), b: c(b), m: c(m), k, n };
        let direct = lerch_partial_direct(&p).unwrap();
        let closed = lerch_partial_closed(&p, &QuadConfig::default()).unwrap().value;
        prop_assert!((closed - direct).norm() <= 1e-8 * direct.norm(), "{closed} vs {direct}");
    }

    #[test]
    fn hurwitz_at_negative_integers_is_a_bernoulli_polynomial(k in 0u32..10, b in -2.0f64..2.0) {
        prop_assume!(b.abs() > 1e-3);
        let z = hurwitz_zeta_neg(k, c(b)).unwrap();
        let bern = bernoulli_poly(k as usize + 1, c(b)).unwrap();
        let expect = -bern / (k as f64 + 1.0);
        prop_assert!((z - expect).norm() <= 1e-12 * bern.norm().max(1.0));
    }

    #[test]
    fn hurwitz_shift_adds_a_power(k in 0u32..8, b in 0.1f64..2.0) {
        // zeta(-k, b) - zeta(-k, b + 1) = b^k
        let lhs = hurwitz_zeta_neg(k, c(b)).unwrap() - hurwitz_zeta_neg(k, c(b + 1.0)).unwrap();
        prop_assert!((lhs - c(b.powi(k as i32))).norm() <= 1e-9 * b.powi(k as i32).max(1.0));
    }

    #[test]
    fn digamma_recurrence(re in 0.05f64..20.0, im in -5.0f64..5.0) {
        let z = ComplexValue::new(re, im);
        let lhs = digamma(z + 1.0).unwrap() - digamma(z).unwrap();
        prop_assert!((lhs - z.inv()).norm() <= 1e-11 * z.inv().norm().max(1.0));
    }

    #[test]
    fn regime_is_periodic_in_b(b in -3.0f64..3.0, shift in -4i32..4) {
        let r = BClass::classify(c(b)).regime;
        prop_assert_eq!(r, BClass::classify(c(b + shift as f64)).regime);
        let half = BClass::classify(c(0.5 + shift as f64)).regime;
        prop_assert_eq!(half, Regime::HalfIntegerB);
    }
}
