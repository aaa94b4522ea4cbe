//! Property tests for the exact arithmetic substrate.

use grla_core::poly::{Mono, SymbolicPoly, VarSet};
use grla_core::rational::Rat;
use grla_core::rotation::RotationNumber;
use proptest::prelude::*;
use std::sync::Arc;

fn vars3() -> Arc<VarSet> {
    VarSet::new(vec!["x".into(), "y".into(), "z".into()])
}

prop_compose! {
    fn small_rat()(n in -20i64..=20, d in 1i64..=12) -> Rat {
        Rat::new(n, d)
    }
}

prop_compose! {
    fn small_poly()(terms in proptest::collection::vec(
        ((0u16..4, 0u16..4, 0u16..4), -9i64..=9),
        0..6,
    )) -> SymbolicPoly {
        let vars = vars3();
        let mut p = SymbolicPoly::zero(vars);
        for ((a, b, c), coeff) in terms {
            p.add_term(Mono::from_exps(&[a, b, c]), Rat::from(coeff));
        }
        p
    }
}

proptest! {
    #[test]
    fn distributivity((p, q, r) in (small_poly(), small_poly(), small_poly())) {
        let lhs = p.add(&q).mul(&r);
        let rhs = p.mul(&r).add(&q.mul(&r));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplication_commutes((p, q) in (small_poly(), small_poly())) {
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn leibniz_rule((p, q) in (small_poly(), small_poly())) {
        for var in ["x", "y", "z"] {
            let lhs = p.mul(&q).derive(var).unwrap();
            let rhs = p
                .derive(var)
                .unwrap()
                .mul(&q)
                .add(&p.mul(&q.derive(var).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rotation_is_periodic(alpha in small_rat(), k in -5i64..=5) {
        let shifted = &alpha + &Rat::from(k);
        prop_assert_eq!(RotationNumber::of(&alpha), RotationNumber::of(&shifted));
        let v = RotationNumber::of(&alpha);
        prop_assert!(!v.value().is_negative());
        prop_assert!(v.value() < &Rat::one());
    }

    #[test]
    fn rational_field_axioms((a, b, c) in (small_rat(), small_rat(), small_rat())) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        if !c.is_zero() {
            let q = &(&a * &c) / &c;
            prop_assert_eq!(q, a.clone());
        }
        prop_assert_eq!(&a - &a, Rat::zero());
    }
}
