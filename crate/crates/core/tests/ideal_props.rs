mod common;

use std::sync::Arc;

use num_traits::Zero;
use polargerm::gb::{self, Length};
use polargerm::ideal::{ideal_quotient, saturate};
use polargerm::ring::{Polynomial, Ring};
use polargerm::{Engine, IdealPresentation, LocalOrder, MonomialOrder};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn xy() -> Arc<Ring> {
    Ring::new(&["x", "y"], None).unwrap()
}

fn xyz() -> Arc<Ring> {
    Ring::new(&["x", "y", "z"], None).unwrap()
}

fn random_ideal(seed: u64, ring: &Arc<Ring>) -> IdealPresentation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| {
            let terms = rng.gen_range(1..=3);
            common::random_poly(&mut rng, ring, terms, 1, 3)
        })
        .collect();
    IdealPresentation::new(ring, gens).unwrap()
}

fn lead(p: &Polynomial, order: &MonomialOrder) -> polargerm::Monomial {
    p.terms().map(|(m, _)| m.clone()).max_by(|a, b| order.cmp(a, b)).unwrap()
}

/// S-polynomial computed from scratch.
fn s_poly(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let (mf, mg) = (lead(f, order), lead(g, order));
    let l = mf.lcm(&mg);
    let a = f.mul_monomial(&mf.quotient_of(&l), &f.coefficient(&mf).recip());
    let b = g.mul_monomial(&mg.quotient_of(&l), &g.coefficient(&mg).recip());
    &a - &b
}

fn orders(n: usize) -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::neg_degrevlex(n),
        MonomialOrder::neg_degrevlex_permuted((0..n).rev().collect()).unwrap(),
        MonomialOrder::degrevlex(n),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn s_polynomials_reduce_to_zero(seed in any::<u64>(), three in any::<bool>()) {
        let ring = if three { xyz() } else { xy() };
        let ideal = random_ideal(seed, &ring);
        let budget = gb::Budget::default();
        for order in orders(ring.nvars()) {
            let sb = gb::standard_basis(ideal.generators(), &ring, &order, &budget).unwrap();
            let g = sb.generators();
            for f in ideal.generators() {
                prop_assert!(sb.normal_form(f, &budget).unwrap().is_zero(), "generator {} not reduced by {}", f, order);
            }
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    let s = s_poly(&g[i], &g[j], &order);
                    prop_assert!(gb::normal_form(&s, g, &order, &budget).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn lengths_and_dims_agree_across_local_orders(seed in any::<u64>(), three in any::<bool>()) {
        let ring = if three { xyz() } else { xy() };
        let ideal = random_ideal(seed, &ring);
        let a = Engine::with_order(LocalOrder::NegDegrevlex);
        let b = Engine::with_order(LocalOrder::NegDegrevlexReversed);
        prop_assert_eq!(a.length(&ideal).unwrap(), b.length(&ideal).unwrap());
        prop_assert_eq!(a.dim(&ideal).unwrap(), b.dim(&ideal).unwrap());
    }

    #[test]
    fn enlarging_an_ideal_never_increases_length(seed in any::<u64>()) {
        let ring = xy();
        let ideal = random_ideal(seed, &ring);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let h = common::random_poly(&mut rng, &ring, 2, 1, 3);
        let bigger = ideal.with(&[h]).unwrap();
        let e = Engine::default();
        let (small, big) = (e.length(&ideal).unwrap(), e.length(&bigger).unwrap());
        match (small, big) {
            (Length::Finite(s), Length::Finite(b)) => prop_assert!(b <= s),
            (Length::Finite(_), Length::Infinite) => prop_assert!(false, "length grew to infinity"),
            _ => {}
        }
        prop_assert!(e.contains_ideal(&bigger, &ideal).unwrap());
    }

    #[test]
    fn weak_division_identity(seed in any::<u64>()) {
        let ring = xy();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_poly(&mut rng, &ring, 4, 0, 4);
        let divisors: Vec<Polynomial> = (0..2).map(|_| common::random_poly(&mut rng, &ring, 2, 1, 3)).collect();
        for order in orders(2) {
            let d = gb::weak_division(&f, &divisors, &order, &gb::Budget::default()).unwrap();
            prop_assert!(!d.unit.constant_term().is_zero());
            let rhs = d.quotients.iter().zip(&divisors).fold(d.remainder.clone(), |acc, (q, g)| &acc + &(q * g));
            prop_assert_eq!(&d.unit * &f, rhs);
        }
    }

    #[test]
    fn saturation_is_idempotent_and_matches_rabinowitsch(seed in any::<u64>()) {
        let ring = xy();
        let ideal = random_ideal(seed, &ring);
        let mut rng = ChaCha8Rng::seed_from_u64(seed.rotate_left(7));
        let terms = rng.gen_range(1..=2);
        let g = common::random_poly(&mut rng, &ring, terms, 1, 2);
        let e = Engine::default();
        let sat = saturate(&ideal, &g, &e).unwrap();
        let again = saturate(&sat.ideal, &g, &e).unwrap();
        prop_assert_eq!(again.steps, 0);
        prop_assert!(e.same_ideal(&again.ideal, &sat.ideal).unwrap());

        // I : g^∞ = (I + (1 - u g)) ∩ O
        let big = Ring::new(&["x", "y", "u"], None).unwrap();
        let u = Polynomial::var(&big, "u").unwrap();
        let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|p| p.remap(&big).unwrap()).collect();
        gens.push(&Polynomial::one(&big) - &(&u * &g.remap(&big).unwrap()));
        let elim = gb::eliminate(&IdealPresentation::new(&big, gens).unwrap(), &["u"], &e.budget).unwrap();
        let back: Vec<Polynomial> = elim.generators().iter().map(|p| p.remap(&ring).unwrap()).collect();
        prop_assert!(e.same_ideal(&IdealPresentation::new(&ring, back).unwrap(), &sat.ideal).unwrap());
    }

    #[test]
    fn quotient_contract_and_containment_chain(seed in any::<u64>()) {
        let ring = xy();
        let ideal = random_ideal(seed, &ring);
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        let terms = rng.gen_range(1..=2);
        let g = common::random_poly(&mut rng, &ring, terms, 1, 2);
        let e = Engine::default();
        let q = ideal_quotient(&ideal, &g, &e).unwrap();
        let products: Vec<Polynomial> = q.generators().iter().map(|h| h * &g).collect();
        prop_assert!(e.contains_ideal(&ideal, &IdealPresentation::new(&ring, products).unwrap()).unwrap());
        let sat = saturate(&ideal, &g, &e).unwrap();
        prop_assert!(e.contains_ideal(&q, &ideal).unwrap());
        prop_assert!(e.contains_ideal(&sat.ideal, &q).unwrap());
    }
}

#[test]
fn local_lengths_match_linear_algebra() {
    let ring = xy();
    let e = Engine::default();
    let mut checked = 0;
    for seed in 0..40u64 {
        let ideal = random_ideal(seed, &ring);
        if let Length::Finite(len) = e.length(&ideal).unwrap() {
            assert_eq!(common::local_length_oracle(ideal.generators(), 30), Some(len), "{:?}", ideal.generators());
            checked += 1;
        }
    }
    assert!(checked >= 10, "only {checked} zero-dimensional samples");
}
