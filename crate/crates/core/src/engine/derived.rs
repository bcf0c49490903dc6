use std::collections::HashSet;

use super::Engine;
use crate::{Error, Result};

/// Derived series of a finite engine down to a requested depth.
///
/// `levels[0]` is the whole group; `levels[j]` is the commutator-closure
/// subgroup of `levels[j-1]`, each as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSeriesReport {
    pub depth: usize,
    pub levels: Vec<Vec<usize>>,
    pub cardinalities: Vec<usize>,
}

/// Computes `G ⊇ G^(1) ⊇ ... ⊇ G^(k)` by iterated commutator closure.
pub fn derived_series(engine: &Engine, k: usize) -> Result<DerivedSeriesReport> {
    let group = engine.finite_group().ok_or(Error::InfiniteEngine)?;
    if k == 0 {
        return Err(Error::Invalid("derivation depth must be positive".into()));
    }
    let mut levels: Vec<Vec<usize>> = vec![(0..group.order()).collect()];
    for _ in 0..k {
        let prev = levels.last().unwrap();
        let mut comms: HashSet<usize> = HashSet::new();
        for &a in prev {
            for &b in prev {
                let c = group.mul(
                    group.mul(group.inverse(a), group.inverse(b)),
                    group.mul(a, b),
                );
                comms.insert(c);
            }
        }
        let seeds: Vec<usize> = comms.into_iter().collect();
        levels.push(group.closure(&seeds));
    }
    let cardinalities = levels.iter().map(|l| l.len()).collect();
    Ok(DerivedSeriesReport { depth: k, levels, cardinalities })
}

/// Element indices commuting with everything (exhaustive check).
pub fn center(engine: &Engine) -> Result<Vec<usize>> {
    let group = engine.finite_group().ok_or(Error::InfiniteEngine)?;
    let n = group.order();
    Ok((0..n)
        .filter(|&z| (0..n).all(|a| group.mul(z, a) == group.mul(a, z)))
        .collect())
}

/// Number of distinct conjugation maps `x -> g x g^-1` of a finite engine.
pub fn inn_order(engine: &Engine) -> Result<usize> {
    let group = engine.finite_group().ok_or(Error::InfiniteEngine)?;
    let n = group.order();
    let mut maps: HashSet<Vec<usize>> = HashSet::new();
    for g in 0..n {
        let ginv = group.inverse(g);
        let map: Vec<usize> = (0..n).map(|x| group.mul(group.mul(g, x), ginv)).collect();
        maps.insert(map);
    }
    Ok(maps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{cyclic, dihedral, symmetric3, Engine, FiniteGroup};

    fn s4() -> Engine {
        Engine::finite(
            FiniteGroup::from_permutations(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap(),
        )
    }

    #[test]
    fn abelian_derived_subgroup_is_trivial() {
        let z6 = Engine::finite(cyclic(6));
        let report = derived_series(&z6, 1).unwrap();
        assert_eq!(report.cardinalities, vec![6, 1]);
    }

    #[test]
    fn s3_derived_subgroup_has_order_three() {
        let s3 = Engine::finite(symmetric3());
        let report = derived_series(&s3, 1).unwrap();
        assert_eq!(report.cardinalities[1], 3);
    }

    #[test]
    fn s4_second_derived_subgroup_has_order_four() {
        let report = derived_series(&s4(), 2).unwrap();
        assert_eq!(report.cardinalities, vec![24, 12, 4]);
    }

    #[test]
    fn derived_levels_are_normal_subgroups() {
        let s4 = s4();
        let group = s4.finite_group().unwrap();
        let report = derived_series(&s4, 2).unwrap();
        for level in &report.levels {
            let set: HashSet<usize> = level.iter().copied().collect();
            for &a in level {
                assert!(set.contains(&group.inverse(a)));
                for &b in level {
                    assert!(set.contains(&group.mul(a, b)));
                }
                for g in 0..group.order() {
                    let conj = group.mul(group.mul(g, a), group.inverse(g));
                    assert!(set.contains(&conj));
                }
            }
        }
    }

    #[test]
    fn inn_orders_match_center_computation() {
        let cases = [
            (Engine::finite(cyclic(4)), 1),
            (Engine::finite(symmetric3()), 6),
            (Engine::finite(dihedral(4)), 4),
        ];
        for (engine, expected) in cases {
            assert_eq!(inn_order(&engine).unwrap(), expected);
            // independent route: |Inn G| = |G| / |Z(G)|
            let order = engine.order().unwrap();
            assert_eq!(order / center(&engine).unwrap().len(), expected);
        }
    }

    #[test]
    fn infinite_engines_are_rejected() {
        assert!(matches!(derived_series(&Engine::free(2), 1), Err(Error::InfiniteEngine)));
        assert!(matches!(inn_order(&Engine::dihedral_infinite()), Err(Error::InfiniteEngine)));
    }
}
