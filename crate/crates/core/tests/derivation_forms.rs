//! Derivation-form pairs land in the derived series: generated k=1 and k=2
//! pairs over two generators evaluate into the first and second derived
//! subgroups of S4, with the derived series computed by independent
//! commutator closure.

use gcon_core::engine::{derived_series, Engine, FiniteGroup};
use gcon_core::words::derivation_form_pairs;

fn s4() -> Engine {
    Engine::finite(
        FiniteGroup::from_permutations(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap(),
    )
}

#[test]
fn derivation_pairs_evaluate_into_the_derived_series_of_s4() {
    let engine = s4();
    let group = engine.finite_group().unwrap();
    let gens = engine
        .generating_tuple(vec![engine.element(1).unwrap(), engine.element(2).unwrap()])
        .unwrap();
    assert_eq!(gens.elements().len(), 2);

    let report = derived_series(&engine, 2).unwrap();
    assert_eq!(report.cardinalities, vec![24, 12, 4]);

    for (k, budget) in [(1usize, 100usize), (2, 20)] {
        let level: &Vec<usize> = &report.levels[k];
        for pair in derivation_form_pairs(2, k, budget).unwrap() {
            let value = pair.evaluate(&gens).unwrap();
            let idx = value.finite_index().unwrap();
            assert!(
                level.binary_search(&idx).is_ok(),
                "k={k} pair {pair} evaluates to {} outside level {k}",
                group.name(idx)
            );
        }
    }
}

#[test]
fn first_derivation_test_matches_membership_for_single_commutators() {
    for pair in derivation_form_pairs(3, 1, 60).unwrap() {
        assert!(pair.is_first_derivation_form());
    }
}
