//! The coarsening lemma on seeded random instances: for a random corpus
//! group, random generating tuple, random partition and random refinement,
//! relabeling the fine configuration set through the merge map equals the
//! coarse configuration set computed directly. Both sides are exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gcon_core::config::{coarsen_config_set, configuration_set_finite, generating_tuples};
use gcon_core::docs::corpus;
use gcon_core::engine::Engine;
use gcon_core::partition::{is_refinement, Partition};

/// Random labels compacted to first-occurrence order, so every label occurs.
fn random_partition(rng: &mut ChaCha8Rng, engine: &Engine, max_blocks: usize) -> Partition {
    let order = engine.order().unwrap();
    let raw: Vec<usize> = (0..order).map(|_| rng.random_range(1..=max_blocks)).collect();
    let mut relabel: Vec<usize> = Vec::new();
    let labels: Vec<usize> = raw
        .iter()
        .map(|&l| match relabel.iter().position(|&x| x == l) {
            Some(pos) => pos + 1,
            None => {
                relabel.push(l);
                relabel.len()
            }
        })
        .collect();
    Partition::from_labels(engine, labels, relabel.len()).unwrap()
}

/// Splits each block of the coarse partition into up to two random halves.
fn random_refinement(rng: &mut ChaCha8Rng, engine: &Engine, coarse: &Partition) -> Partition {
    let coarse_labels = coarse.labels_vec().unwrap();
    let raw: Vec<(usize, bool)> =
        coarse_labels.iter().map(|&l| (l, rng.random_bool(0.5))).collect();
    let mut relabel: Vec<(usize, bool)> = Vec::new();
    let labels: Vec<usize> = raw
        .iter()
        .map(|key| match relabel.iter().position(|x| x == key) {
            Some(pos) => pos + 1,
            None => {
                relabel.push(*key);
                relabel.len()
            }
        })
        .collect();
    Partition::from_labels(engine, labels, relabel.len()).unwrap()
}

#[test]
fn coarsening_commutes_with_configuration_sets_on_200_random_instances() {
    let groups = corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    while checked < 200 {
        let (name, engine) = &groups[rng.random_range(0..groups.len())];
        let n = rng.random_range(1..=2);
        let tuples = generating_tuples(engine, n).unwrap();
        if tuples.is_empty() {
            continue;
        }
        let gens = &tuples[rng.random_range(0..tuples.len())];
        let max_blocks = engine.order().unwrap().min(4);
        let coarse = random_partition(&mut rng, engine, max_blocks);
        let fine = random_refinement(&mut rng, engine, &coarse);
        let map = is_refinement(&fine, &coarse)
            .unwrap()
            .unwrap_or_else(|| panic!("{name}: constructed refinement must refine"));
        let fine_set = configuration_set_finite(gens, &fine).unwrap();
        let lhs = coarsen_config_set(&fine_set, &map).unwrap();
        let rhs = configuration_set_finite(gens, &coarse).unwrap();
        assert_eq!(lhs.to_rows(), rhs.to_rows(), "coarsening lemma fails on {name}");
        // size bound |Con| <= m^(n+1), with equality 1 for the trivial partition
        let bound = fine_set.m().pow(fine_set.n() as u32 + 1);
        assert!(fine_set.len() <= bound, "size bound fails on {name}");
        if fine_set.m() == 1 {
            assert_eq!(fine_set.len(), 1);
        }
        checked += 1;
    }
}
