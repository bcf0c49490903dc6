use std::collections::HashSet;

use super::{Engine, GeneratingTuple, GroupElement};
use crate::Result;

/// Breadth-first layers of the word-metric ball around the identity:
/// `layers[r]` holds the elements at distance exactly `r` from the identity
/// over the tuple's letters and their inverses, each layer sorted canonically.
pub fn ball_layers(gens: &GeneratingTuple, max_radius: usize) -> Result<Vec<Vec<GroupElement>>> {
    let engine: &Engine = gens.engine();
    let mut letters: Vec<GroupElement> = Vec::with_capacity(gens.len() * 2);
    for g in gens.elements() {
        letters.push(g.clone());
        letters.push(engine.invert(g)?);
    }
    let identity = engine.identity();
    let mut seen: HashSet<GroupElement> = HashSet::new();
    seen.insert(identity.clone());
    let mut layers = vec![vec![identity]];
    for _ in 1..=max_radius {
        let mut next = Vec::new();
        for el in layers.last().unwrap() {
            for l in &letters {
                let prod = engine.multiply(el, l)?;
                if seen.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        next.sort_unstable();
        layers.push(next);
    }
    Ok(layers)
}

/// All products of at most `radius` generator letters and their inverses,
/// deduplicated by canonical form and sorted in canonical element order.
pub fn ball(gens: &GeneratingTuple, radius: usize) -> Result<Vec<GroupElement>> {
    let layers = ball_layers(gens, radius)?;
    let mut out: Vec<GroupElement> = layers.into_iter().flatten().collect();
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{cyclic, Engine};

    #[test]
    fn radius_zero_is_identity() {
        let f2 = Engine::free(2);
        let gens = f2.standard_generators();
        assert_eq!(ball(&gens, 0).unwrap(), vec![f2.identity()]);
    }

    #[test]
    fn free_ball_radius_one_has_five_elements() {
        let f2 = Engine::free(2);
        let gens = f2.standard_generators();
        assert_eq!(ball(&gens, 1).unwrap().len(), 5);
    }

    #[test]
    fn dihedral_ball_radius_two() {
        // hand enumeration with x^2 = y^2 = e: {e, x, y, xy, yx}
        let d = Engine::dihedral_infinite();
        let gens = d.standard_generators();
        let b = ball(&gens, 2).unwrap();
        assert_eq!(b.len(), 5);
        let shown: Vec<String> = b.iter().map(|e| d.show(e)).collect();
        assert_eq!(shown, vec!["e", "x", "y", "xy", "yx"]);
    }

    #[test]
    fn ball_is_monotone_and_stabilizes_on_finite_engines() {
        let z6 = Engine::finite(cyclic(6));
        let gens = z6.generating_tuple(vec![z6.element(1).unwrap()]).unwrap();
        let mut prev = 0;
        for r in 0..=7 {
            let b = ball(&gens, r).unwrap();
            assert!(b.len() >= prev);
            prev = b.len();
        }
        let stable = ball(&gens, 7).unwrap();
        let mut all = z6.enumerate_all().unwrap();
        all.sort_unstable();
        assert_eq!(stable, all);
    }
}
