mod common;

use std::collections::BTreeMap;

use common::{int, naive_mul, table, var};
use loopsing::exactalg::{rat, LoopPoly, LoopVar, Monomial};
use proptest::prelude::*;

fn arb_var() -> impl Strategy<Value = LoopVar> {
    (1u32..=3, -2i64..=2).prop_map(|(c, j)| LoopVar::new(c, j))
}

fn arb_term() -> impl Strategy<Value = (loopsing::exactalg::Rational, Monomial)> {
    (
        (-9i64..=9, 1i64..=4),
        prop::collection::vec((arb_var(), 1u32..=3), 0..=3),
    )
        .prop_map(|((n, d), fs)| (rat(n, d), Monomial::from_factors(fs)))
}

fn arb_poly() -> impl Strategy<Value = LoopPoly> {
    prop::collection::vec(arb_term(), 0..=8).prop_map(LoopPoly::from_terms)
}

fn small_poly() -> impl Strategy<Value = LoopPoly> {
    prop::collection::vec(arb_term(), 0..=3).prop_map(LoopPoly::from_terms)
}

fn linear_poly() -> impl Strategy<Value = LoopPoly> {
    prop::collection::vec(((-3i64..=3), arb_var()), 0..=2).prop_map(|ts| {
        LoopPoly::from_terms(ts.into_iter().map(|(c, v)| (rat(c, 1), Monomial::var(v))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
        prop_assert_eq!(&p * &LoopPoly::one(), p.clone());
    }

    #[test]
    fn mul_matches_schoolbook(p in arb_poly(), q in arb_poly()) {
        prop_assert_eq!(table(&(&p * &q)), naive_mul(&p, &q));
    }

    #[test]
    fn partial_is_a_derivation(p in arb_poly(), q in arb_poly(), v in arb_var()) {
        let lhs = (&p * &q).partial(v);
        let rhs = &(&p * &q.partial(v)) + &(&q * &p.partial(v));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_map(p in small_poly(), q in small_poly(), images in prop::collection::vec(linear_poly(), 15)) {
        let mut assignment = BTreeMap::new();
        let mut it = images.into_iter();
        for c in 1..=3 {
            for j in -2..=2 {
                assignment.insert(LoopVar::new(c, j), it.next().unwrap());
            }
        }
        let lhs = (&p * &q).substitute(&assignment).unwrap();
        let rhs = &p.substitute(&assignment).unwrap() * &q.substitute(&assignment).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_form_ignores_insertion_order(terms in prop::collection::vec(arb_term(), 0..=8), seed in any::<u64>()) {
        let a = LoopPoly::from_terms(terms.clone());
        let mut shuffled = terms;
        // deterministic Fisher-Yates from the seed
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let b = LoopPoly::from_terms(shuffled);
        prop_assert_eq!(format!("{:?}", a), format!("{:?}", b));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn identity_substitution(p in arb_poly()) {
        let assignment: BTreeMap<LoopVar, LoopPoly> =
            p.variables().into_iter().map(|v| (v, LoopPoly::var(v))).collect();
        prop_assert_eq!(p.substitute(&assignment).unwrap(), p);
    }

    #[test]
    fn no_zero_coefficients_stored(p in arb_poly(), q in arb_poly()) {
        let s = &(&p * &q) - &(&q * &p);
        prop_assert!(s.is_zero());
        for (_, c) in (&p + &q).terms() {
            prop_assert!(*c != rat(0, 1));
        }
    }
}

#[test]
fn cube_of_binomial() {
    let z = LoopVar::ambient(1);
    let mut a = BTreeMap::new();
    a.insert(z, &var(1, -1) + &var(1, 0));
    let got = LoopPoly::var(z).pow(3).substitute(&a).unwrap();
    let (m, o) = (var(1, -1), var(1, 0));
    let expect = &(&(&m.pow(3) + &(&int(3) * &(&m.pow(2) * &o))) + &(&int(3) * &(&m * &o.pow(2))))
        + &o.pow(3);
    assert_eq!(got, expect);
    // independent check: expand (a+b)^3 by repeated schoolbook products
    let ab = &m + &o;
    let sq: LoopPoly = LoopPoly::from_terms(naive_mul(&ab, &ab).into_iter().map(|(k, c)| {
        (
            c,
            Monomial::from_factors(
                k.into_iter()
                    .map(|(coord, j, e)| (LoopVar::new(coord, j), e)),
            ),
        )
    }));
    assert_eq!(table(&got), naive_mul(&sq, &ab));
}
