mod common;

use common::{corpus, f, NON_ISOLATED};
use loopsing::exactalg::{rat, LoopPoly, LoopVar, Monomial};
use loopsing::grobner::{
    all_s_polynomials_vanish, buchberger, milnor_number, milnor_number_oracle, s_polynomial,
    GrobnerError, Ideal,
};
use loopsing::loopfun::InputFunction;
use proptest::prelude::*;

fn ambient_poly(d: u32) -> impl Strategy<Value = LoopPoly> {
    let mono = prop::collection::vec((1..=d, 1u32..=2), 0..=2).prop_map(|fs| {
        Monomial::from_factors(fs.into_iter().map(|(c, e)| (LoopVar::ambient(c), e)))
    });
    prop::collection::vec((-3i64..=3, mono), 1..=3)
        .prop_map(|ts| LoopPoly::from_terms(ts.into_iter().map(|(c, m)| (rat(c, 1), m))))
}

fn arb_ideal() -> impl Strategy<Value = Ideal> {
    (1u32..=3).prop_flat_map(|d| {
        prop::collection::vec(ambient_poly(d), 1..=3)
            .prop_map(move |gens| Ideal::new(d, gens).unwrap())
    })
}

fn fermat(d: u32, delta: u32) -> InputFunction {
    let p = (1..=d).fold(LoopPoly::zero(), |acc, c| {
        &acc + &LoopPoly::var(LoopVar::ambient(c)).pow(delta)
    });
    InputFunction::new(d, p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn output_is_a_reduced_basis(ideal in arb_ideal()) {
        let g = buchberger(&ideal);
        prop_assert!(all_s_polynomials_vanish(&g.elements));
        for (i, a) in g.elements.iter().enumerate() {
            for (j, b) in g.elements.iter().enumerate() {
                prop_assert!(g.normal_form(&s_polynomial(a, b)).is_zero());
                if i != j {
                    let lead = a.leading_monomial().unwrap();
                    prop_assert!(b.terms().all(|(m, _)| !lead.divides(m)));
                }
            }
            prop_assert_eq!(a.leading_term().unwrap().1.clone(), rat(1, 1));
        }
        for p in ideal.generators() {
            prop_assert!(g.normal_form(p).is_zero());
        }
    }

    #[test]
    fn buchberger_is_idempotent(ideal in arb_ideal()) {
        let g = buchberger(&ideal);
        let again = buchberger(&Ideal::new(ideal.d(), g.elements.clone()).unwrap());
        prop_assert_eq!(again, g);
    }

    #[test]
    fn normal_form_is_idempotent(ideal in arb_ideal(), p in ambient_poly(3)) {
        let g = buchberger(&ideal);
        let p = p.restrict(|v| v.coord <= ideal.d());
        let once = g.normal_form(&p);
        prop_assert_eq!(g.normal_form(&once), once.clone());
        prop_assert!(g.normal_form(&(&p - &once)).is_zero());
    }
}

#[test]
fn fermat_milnor_numbers() {
    for d in 1..=3u32 {
        for delta in 2..=5u32 {
            let g = fermat(d, delta);
            let expect = (delta as u64 - 1).pow(d);
            assert_eq!(milnor_number(&g).unwrap(), expect, "d={d} delta={delta}");
            assert_eq!(
                milnor_number_oracle(&g).unwrap(),
                expect,
                "d={d} delta={delta}"
            );
        }
    }
}

#[test]
fn corpus_milnor_agrees_with_oracle() {
    for p in corpus() {
        let g = &p.function;
        let mu = milnor_number(g).unwrap();
        assert_eq!(mu, milnor_number_oracle(g).unwrap(), "{}", p.render());
        assert_eq!(mu, (g.delta() as u64 - 1).pow(g.d()), "{}", p.render());
    }
}

#[test]
fn non_isolated_cases_are_rejected() {
    for src in NON_ISOLATED {
        let g = f(src);
        assert!(
            matches!(milnor_number(&g), Err(GrobnerError::NotIsolated(_))),
            "{src}"
        );
        assert!(
            matches!(milnor_number_oracle(&g), Err(GrobnerError::NotIsolated(_))),
            "{src}"
        );
    }
}

#[test]
fn small_bases() {
    let x = LoopPoly::var(LoopVar::ambient(1));
    let y = LoopPoly::var(LoopVar::ambient(2));
    let three = LoopPoly::constant(rat(3, 1));
    let g = buchberger(&Ideal::new(2, vec![&three * &x.pow(2), &three * &y.pow(2)]).unwrap());
    let mut expect = vec![x.pow(2), y.pow(2)];
    expect.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    assert_eq!(g.elements, expect);
    let lin = buchberger(&Ideal::new(2, vec![&x + &y, &x - &y]).unwrap());
    let mut expect = vec![x.clone(), y.clone()];
    expect.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    assert_eq!(lin.elements, expect);
}
