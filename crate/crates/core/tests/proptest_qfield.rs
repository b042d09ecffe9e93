//! Property-based tests for the coefficient field Q(q): field axioms,
//! canonical form, and compatibility with numeric evaluation.

use proptest::prelude::*;

use mathieu_core::parse::parse_qrat;
use mathieu_core::qfield::QRat;

/// A random rational function built from small integer coefficients and
/// monomial powers of q.
fn qrat_strategy() -> impl Strategy<Value = QRat> {
    let term = (-6i64..=6, -4i64..=4).prop_map(|(c, e)| &QRat::from_int(c) * &QRat::q_pow(e));
    prop::collection::vec(term, 1..4)
        .prop_map(|ts| ts.iter().fold(QRat::zero(), |acc, t| &acc + t))
}

fn nonzero_qrat_strategy() -> impl Strategy<Value = QRat> {
    qrat_strategy().prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #[test]
    fn addition_commutes(a in qrat_strategy(), b in qrat_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn multiplication_commutes(a in qrat_strategy(), b in qrat_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn distributivity(a in qrat_strategy(), b in qrat_strategy(), c in qrat_strategy()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn additive_inverse(a in qrat_strategy()) {
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplicative_inverse(a in nonzero_qrat_strategy()) {
        let inv = a.inverse().unwrap();
        prop_assert!((&a * &inv).is_one());
    }

    #[test]
    fn canonical_form_is_unique(a in qrat_strategy(), b in nonzero_qrat_strategy()) {
        // (a*b)/b must reduce to exactly a, not merely an equivalent fraction
        let roundtrip = &(&a * &b) * &b.inverse().unwrap();
        prop_assert_eq!(roundtrip.num(), a.num());
        prop_assert_eq!(roundtrip.den(), a.den());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in qrat_strategy(), b in qrat_strategy()) {
        let q0 = 0.6;
        let (ea, eb) = (a.eval_f64(q0).unwrap(), b.eval_f64(q0).unwrap());
        let sum = (&a + &b).eval_f64(q0).unwrap();
        let prod = (&a * &b).eval_f64(q0).unwrap();
        let scale = 1.0 + ea.abs() + eb.abs();
        prop_assert!((sum - (ea + eb)).abs() < 1e-8 * scale);
        prop_assert!((prod - ea * eb).abs() < 1e-8 * scale * scale);
    }

    #[test]
    fn display_parse_roundtrip(a in qrat_strategy()) {
        let parsed = parse_qrat(&a.to_string()).unwrap();
        prop_assert_eq!(parsed, a);
    }
}
