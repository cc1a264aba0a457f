use std::collections::BTreeMap;
use std::sync::Arc;

use polargerm::parse_poly;
use polargerm::ring::{rat, Monomial, Polynomial, Rational, Ring};
use proptest::prelude::*;

fn ring() -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], None).unwrap()
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -6i64..7, 1i64..4), 0..6).prop_map(|terms| {
        let r = ring();
        terms.into_iter().fold(Polynomial::zero(&r), |acc, ((a, b, c), n, d)| {
            &acc + &Polynomial::monomial(&r, Monomial::new(vec![a, b, c]), Rational::new(n.into(), d.into()))
        })
    })
}

/// Schoolbook product over an exponent-keyed map, independent of the crate's
/// own multiplication.
fn dense_product(f: &Polynomial, g: &Polynomial) -> BTreeMap<Vec<u32>, Rational> {
    let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            let e: Vec<u32> = m1.exponents().iter().zip(m2.exponents()).map(|(a, b)| a + b).collect();
            *out.entry(e).or_insert_with(|| rat(0)) += c1 * c2;
        }
    }
    out.retain(|_, c| *c != rat(0));
    out
}

proptest! {
    #[test]
    fn add_then_subtract_is_identity(f in poly(), g in poly()) {
        prop_assert_eq!(&(&f + &g) - &g, f);
    }

    #[test]
    fn product_matches_schoolbook(f in poly(), g in poly()) {
        let p = &f * &g;
        let got: BTreeMap<Vec<u32>, Rational> = p.terms().map(|(m, c)| (m.exponents().to_vec(), c.clone())).collect();
        prop_assert_eq!(got, dense_product(&f, &g));
    }

    #[test]
    fn derivative_is_linear(f in poly(), g in poly(), c in -5i64..6) {
        for i in 0..3 {
            let lhs = (&f.scale(&rat(c)) + &g).derivative_at(i);
            let rhs = &f.derivative_at(i).scale(&rat(c)) + &g.derivative_at(i);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn leibniz_rule(f in poly(), g in poly()) {
        for i in 0..3 {
            let lhs = (&f * &g).derivative_at(i);
            let rhs = &(&f.derivative_at(i) * &g) + &(&f * &g.derivative_at(i));
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn display_parses_back(f in poly()) {
        let r = f.ring().clone();
        prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
    }

    #[test]
    fn multiplication_is_commutative_and_distributive(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
    }
}

#[test]
fn mixing_rings_is_an_error() {
    let a = Ring::new(&["x", "y"], None).unwrap();
    let b = Ring::new(&["x", "z"], None).unwrap();
    let f = Polynomial::var(&a, "x").unwrap();
    let g = Polynomial::var(&b, "x").unwrap();
    assert!(f.checked_add(&g).is_err());
    assert!(f.checked_mul(&g).is_err());
}
