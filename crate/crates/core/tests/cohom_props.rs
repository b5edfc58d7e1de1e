mod common;

use common::corpus;
use loopsing::cohom::{
    escape_report, gysin_step, milnor_fiber_cohomology, renormalized_nearby_cohomology,
    renormalized_with, solve_les, sphere_cohomology, truncation_cohomology, truncation_tower,
    DimensionTheory, GradedDims, LesSystem, RankFact,
};
use loopsing::grobner::milnor_number;
use proptest::prelude::*;

fn full_system(full: &GradedDims, d: u32) -> LesSystem {
    LesSystem {
        codim: d,
        source: full.clone(),
        complement: sphere_cohomology(d),
        rank_facts: vec![RankFact::residue_full_rank(d)],
    }
}

fn corpus_pairs() -> Vec<(u32, u64)> {
    corpus()
        .iter()
        .map(|p| (p.function.d(), milnor_number(&p.function).unwrap()))
        .collect()
}

#[test]
fn gysin_agrees_with_solver_on_corpus() {
    for (d, mu) in corpus_pairs() {
        let mut full = milnor_fiber_cohomology(d, mu);
        for n in 0..4 {
            let reduced = full.reduced().unwrap();
            let step = gysin_step(&reduced, d).unwrap();
            let solved = solve_les(&full_system(&full, d)).unwrap();
            solved.audit().unwrap();
            assert_eq!(
                solved.middle.reduced().unwrap(),
                step.reduced,
                "d={d} mu={mu} n={n}"
            );
            assert_eq!(solved, step.solution);
            // Gysin sequences preserve χ since χ(S^{2d-1}) = 0
            assert_eq!(
                solved.middle.euler_characteristic(),
                full.euler_characteristic()
            );
            full = solved.middle;
        }
        assert_eq!(full, truncation_cohomology(d, mu, 4).unwrap().dims);
    }
}

#[test]
fn renormalized_concentration_on_corpus() {
    for (d, mu) in corpus_pairs() {
        let r = renormalized_nearby_cohomology(d, mu, 4).unwrap();
        assert_eq!(r.stable, GradedDims::from_pairs([(d as i64 - 1, mu)]));
        assert!(r.disagreements.is_empty());
        assert!(r.stable.iter().all(|(k, _)| k >= 0));
        assert_eq!(r.stabilization_step[&0], 1);
        if d > 1 {
            assert_eq!(r.stabilization_step[&(d as i64 - 1)], 0);
        }
    }
}

#[test]
fn quadric_truncations_are_even_spheres() {
    for n in 0..=5 {
        let t = truncation_cohomology(1, 1, n).unwrap();
        let expect = if n == 0 {
            GradedDims::from_pairs([(0, 2)])
        } else {
            GradedDims::from_pairs([(0, 1), (2 * n as i64, 1)])
        };
        assert_eq!(t.dims, expect);
    }
}

#[test]
fn escape_examples() {
    let rows: Vec<(u32, i64)> = escape_report(1, 1, 3)
        .unwrap()
        .iter()
        .map(|r| (r.n, r.concentration_degree))
        .collect();
    assert_eq!(rows, vec![(0, 0), (1, 2), (2, 4), (3, 6)]);
    let rows: Vec<(u32, i64)> = escape_report(2, 4, 2)
        .unwrap()
        .iter()
        .map(|r| (r.n, r.concentration_degree))
        .collect();
    assert_eq!(rows, vec![(0, 1), (1, 5), (2, 9)]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn escape_degrees_form_a_progression(d in 1u32..=4, mu in 1u64..=20, n_max in 0u32..=6) {
        let rows = escape_report(d, mu, n_max).unwrap();
        prop_assert_eq!(rows.len() as u32, n_max + 1);
        for (n, r) in rows.iter().enumerate() {
            prop_assert_eq!(r.concentration_degree, 2 * n as i64 * d as i64 + d as i64 - 1);
            prop_assert_eq!(r.stated_bound, 2 * (n as i64 + 1) * d as i64 - 1);
        }
        for w in rows.windows(2) {
            prop_assert_eq!(w[1].concentration_degree - w[0].concentration_degree, 2 * d as i64);
        }
    }

    #[test]
    fn normalization_only_shifts(d in 1u32..=3, mu in 1u64..=10, k in -3i64..=3, n_max in 2u32..=5) {
        let base = renormalized_nearby_cohomology(d, mu, n_max).unwrap();
        let theory = DimensionTheory { offset_per_step: d, normalization: k };
        let moved = renormalized_with(theory, d, mu, n_max).unwrap();
        prop_assert_eq!(moved.stable, base.stable.shift(-2 * k));
        prop_assert_eq!(moved.expected, base.expected.shift(-2 * k));
        let shifted_steps: Vec<(i64, u32)> = base.stabilization_step.iter().map(|(&a, &n)| (a - 2 * k, n)).collect();
        prop_assert_eq!(moved.stabilization_step.into_iter().collect::<Vec<_>>(), shifted_steps);
        prop_assert!(moved.disagreements.is_empty());
    }

    #[test]
    fn solver_audits_every_tower(d in 1u32..=3, mu in 1u64..=16, n_max in 1u32..=4) {
        let tower = truncation_tower(d, mu, n_max).unwrap();
        for t in &tower {
            if let Some(sol) = &t.step_to_next {
                prop_assert!(sol.audit().is_ok());
                prop_assert_eq!(sol.middle.euler_characteristic(), t.dims.euler_characteristic());
            }
        }
    }
}
