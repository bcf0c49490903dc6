//! Word-calculus laws on seeded random pairs across every engine kind:
//! concatenation evaluates to the product, inversion to the inverse, and in
//! the free engine a pair evaluates to the identity iff it reduces to the
//! empty pair.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gcon_core::engine::{cyclic, symmetric3, Engine, GeneratingTuple};
use gcon_core::words::RepPair;

fn law_engines() -> Vec<(String, GeneratingTuple)> {
    let z4 = Engine::finite(cyclic(4));
    let z4_gens = z4.generating_tuple(vec![z4.element(1).unwrap()]).unwrap();
    let s3 = Engine::finite(symmetric3());
    let s3_gens = s3
        .generating_tuple(vec![
            s3.element_by_name("(0 1)").unwrap(),
            s3.element_by_name("(0 2)").unwrap(),
        ])
        .unwrap();
    vec![
        ("z4".into(), z4_gens),
        ("s3".into(), s3_gens),
        ("free2".into(), Engine::free(2).standard_generators()),
        ("abelian2".into(), Engine::free_abelian(2).standard_generators()),
        ("znf-1-z2".into(), Engine::product_zn_f(1, cyclic(2)).standard_generators()),
        ("dinf".into(), Engine::dihedral_infinite().standard_generators()),
    ]
}

fn random_pair(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> RepPair {
    let len = rng.random_range(0..=max_len);
    let letters: Vec<(usize, i8)> = (0..len)
        .map(|_| (rng.random_range(1..=n), if rng.random_bool(0.5) { 1 } else { -1 }))
        .collect();
    RepPair::new(n, &letters).unwrap()
}

#[test]
fn concat_evaluates_to_the_product_on_1000_random_pairs_per_engine() {
    for (name, gens) in law_engines() {
        let engine = gens.engine();
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..1000 {
            let p = random_pair(&mut rng, gens.len(), 8);
            let q = random_pair(&mut rng, gens.len(), 8);
            let lhs = p.concat(&q).unwrap().evaluate(&gens).unwrap();
            let rhs = engine
                .multiply(&p.evaluate(&gens).unwrap(), &q.evaluate(&gens).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "homomorphism law fails on {name} for {p} | {q}");
        }
    }
}

#[test]
fn inverse_pair_evaluates_to_the_inverse_on_1000_random_pairs_per_engine() {
    for (name, gens) in law_engines() {
        let engine = gens.engine();
        let mut rng = ChaCha8Rng::seed_from_u64(0xBEEF);
        for _ in 0..1000 {
            let p = random_pair(&mut rng, gens.len(), 8);
            let lhs = p.inverse().evaluate(&gens).unwrap();
            let rhs = engine.invert(&p.evaluate(&gens).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "inversion law fails on {name} for {p}");
        }
    }
}

#[test]
fn free_evaluation_is_identity_iff_reduction_is_empty() {
    let f2 = Engine::free(2);
    let gens = f2.standard_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(0xFEED);
    for _ in 0..1000 {
        let p = random_pair(&mut rng, 2, 10);
        let trivial = p.evaluate(&gens).unwrap() == f2.identity();
        assert_eq!(trivial, p.free_reduce().is_empty(), "pair {p}");
    }
}

proptest! {
    #[test]
    fn pair_text_roundtrips(letters in prop::collection::vec((1usize..=3, prop_oneof![Just(1i8), Just(-1i8)]), 0..12)) {
        let p = RepPair::new(3, &letters).unwrap();
        let back = RepPair::parse(&p.to_string(), 3).unwrap();
        prop_assert_eq!(p, back);
    }

    #[test]
    fn free_reduce_is_reduced_and_preserves_evaluation(letters in prop::collection::vec((1usize..=2, prop_oneof![Just(1i8), Just(-1i8)]), 0..14)) {
        let p = RepPair::new(2, &letters).unwrap();
        let r = p.free_reduce();
        prop_assert!(r.is_reduced());
        let f2 = Engine::free(2);
        let gens = f2.standard_generators();
        prop_assert_eq!(p.evaluate(&gens).unwrap(), r.evaluate(&gens).unwrap());
    }

    #[test]
    fn inverse_is_an_involution(letters in prop::collection::vec((1usize..=3, prop_oneof![Just(1i8), Just(-1i8)]), 0..10)) {
        let p = RepPair::new(3, &letters).unwrap();
        prop_assert_eq!(p.inverse().inverse(), p);
    }
}
