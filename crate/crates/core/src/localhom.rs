//! The tau relation between generating tuples, local-homomorphism and
//! bounded-epimorphism checks, inner-automorphism separation witnesses, and
//! group-law verification.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::engine::{ball, Engine, GeneratingTuple, GroupElement};
use crate::words::{all_pairs, pair_count, RepPair};
use crate::{Error, Result};

/// The tiered pair sets driving the local-homomorphism construction:
/// all pairs of length at most `3 n0`, `2 n0` and `n0` respectively.
#[derive(Clone, Debug)]
pub struct PairSets {
    pub n0: usize,
    pub s0: Vec<RepPair>,
    pub s1: Vec<RepPair>,
    pub s2: Vec<RepPair>,
}

/// Exhaustively enumerates the three tiers in deterministic order; errors
/// when the outer tier would exceed the budget.
pub fn build_pair_sets(n: usize, n0: usize, budget: u64) -> Result<PairSets> {
    if n == 0 || n0 == 0 {
        return Err(Error::Invalid("n and n0 must be positive".into()));
    }
    let total = pair_count(n, 3 * n0);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "pair sets up to length {} hold {total} pairs (budget {budget})",
            3 * n0
        )));
    }
    let s0: Vec<RepPair> = all_pairs(n, 3 * n0).collect();
    let s1 = s0[..pair_count(n, 2 * n0) as usize].to_vec();
    let s2 = s0[..pair_count(n, n0) as usize].to_vec();
    Ok(PairSets { n0, s0, s1, s2 })
}

/// One entry of a tau relation: a pair with its evaluations in both groups.
#[derive(Clone, Debug)]
pub struct TauEntry {
    pub pair: RepPair,
    pub g_value: GroupElement,
    pub h_value: GroupElement,
}

/// The relation containing `(W(J,ρ;g), W(J,ρ;h))` for the supplied pairs.
/// The direction is fixed from the first tuple to the second; swap the
/// arguments for the other direction.
#[derive(Clone, Debug)]
pub struct TauRelation {
    engine_g: Engine,
    engine_h: Engine,
    entries: Vec<TauEntry>,
}

pub fn tau_relation(
    gens_g: &GeneratingTuple,
    gens_h: &GeneratingTuple,
    pairs: &[RepPair],
) -> Result<TauRelation> {
    if gens_g.len() != gens_h.len() {
        return Err(Error::ArityMismatch(format!(
            "tuples of lengths {} and {}",
            gens_g.len(),
            gens_h.len()
        )));
    }
    let mut entries = Vec::with_capacity(pairs.len());
    for pair in pairs {
        entries.push(TauEntry {
            pair: pair.clone(),
            g_value: pair.evaluate(gens_g)?,
            h_value: pair.evaluate(gens_h)?,
        });
    }
    Ok(TauRelation {
        engine_g: gens_g.engine().clone(),
        engine_h: gens_h.engine().clone(),
        entries,
    })
}

impl TauRelation {
    pub fn entries(&self) -> &[TauEntry] {
        &self.entries
    }

    /// First functionality conflict in entry order: one G-value with two
    /// distinct H-values.
    pub fn functionality_conflict(&self) -> Option<(GroupElement, GroupElement, GroupElement)> {
        let mut seen: HashMap<&GroupElement, &GroupElement> = HashMap::new();
        for entry in &self.entries {
            match seen.get(&entry.g_value) {
                None => {
                    seen.insert(&entry.g_value, &entry.h_value);
                }
                Some(&h) if *h == entry.h_value => {}
                Some(&h) => {
                    return Some((entry.g_value.clone(), h.clone(), entry.h_value.clone()))
                }
            }
        }
        None
    }
}

/// Outcome of a local-homomorphism check. Functionality failure and identity
/// failure are distinct verdicts.
#[derive(Clone, Debug)]
pub enum LocalHomVerdict {
    LocalHomomorphism { pairs_checked: usize },
    /// One G-value is related to two distinct H-values.
    NotFunctional { g_value: GroupElement, h_first: GroupElement, h_second: GroupElement },
    /// Some required value `x`, `y` or `x y^-1` is outside the relation.
    NotDefined { missing: GroupElement },
    /// `phi(x y^-1) != phi(x) phi(y)^-1` for the recorded base elements.
    IdentityFails { x: GroupElement, y: GroupElement },
}

impl LocalHomVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, LocalHomVerdict::LocalHomomorphism { .. })
    }
}

/// Checks that the function induced by a tau relation is a local homomorphism
/// on the given base: functionality first, then `phi(x y^-1) =
/// phi(x) phi(y)^-1` for all base elements.
pub fn is_local_homomorphism(
    rel: &TauRelation,
    base: &[GroupElement],
) -> Result<LocalHomVerdict> {
    if let Some((g, h1, h2)) = rel.functionality_conflict() {
        return Ok(LocalHomVerdict::NotFunctional { g_value: g, h_first: h1, h_second: h2 });
    }
    let mut map: HashMap<&GroupElement, &GroupElement> = HashMap::new();
    for entry in &rel.entries {
        map.insert(&entry.g_value, &entry.h_value);
    }
    let lookup = |el: &GroupElement| -> Option<GroupElement> { map.get(el).map(|&h| h.clone()) };
    let mut pairs_checked = 0usize;
    for x in base {
        for y in base {
            let xy_inv = rel.engine_g.multiply(x, &rel.engine_g.invert(y)?)?;
            let (Some(phi_x), Some(phi_y), Some(phi_xy)) =
                (lookup(x), lookup(y), lookup(&xy_inv))
            else {
                let missing = if lookup(x).is_none() {
                    x.clone()
                } else if lookup(y).is_none() {
                    y.clone()
                } else {
                    xy_inv
                };
                return Ok(LocalHomVerdict::NotDefined { missing });
            };
            let rhs = rel.engine_h.multiply(&phi_x, &rel.engine_h.invert(&phi_y)?)?;
            if phi_xy != rhs {
                return Ok(LocalHomVerdict::IdentityFails { x: x.clone(), y: y.clone() });
            }
            pairs_checked += 1;
        }
    }
    Ok(LocalHomVerdict::LocalHomomorphism { pairs_checked })
}

/// Result of the bounded relator-preservation check.
#[derive(Clone, Debug)]
pub struct EpiCheck {
    pub holds: bool,
    pub witness: Option<RepPair>,
    pub pairs_checked: usize,
}

/// Checks `W(J,ρ;g) = e_G implies W(J,ρ;h) = e_H` for every pair with
/// `|J| <= max_len`; the witness is the first failing pair in enumeration
/// order.
pub fn is_bounded_epimorphism(
    gens_g: &GeneratingTuple,
    gens_h: &GeneratingTuple,
    max_len: usize,
) -> Result<EpiCheck> {
    if gens_g.len() != gens_h.len() {
        return Err(Error::ArityMismatch(format!(
            "tuples of lengths {} and {}",
            gens_g.len(),
            gens_h.len()
        )));
    }
    let e_g = gens_g.engine().identity();
    let e_h = gens_h.engine().identity();
    let mut pairs_checked = 0usize;
    for pair in all_pairs(gens_g.len(), max_len) {
        pairs_checked += 1;
        if pair.evaluate(gens_g)? == e_g && pair.evaluate(gens_h)? != e_h {
            return Ok(EpiCheck { holds: false, witness: Some(pair), pairs_checked });
        }
    }
    Ok(EpiCheck { holds: true, witness: None, pairs_checked })
}

/// Searches for a pair `(I, δ)` with `|I| <= max_len` on which the
/// conjugations by the two evaluated words differ; single letters are tried
/// first because the enumeration is length-major. `None` means every tested
/// displayed inequality fails.
pub fn inner_separation_witness(
    gens: &GeneratingTuple,
    p1: &RepPair,
    p2: &RepPair,
    max_len: usize,
) -> Result<Option<RepPair>> {
    let n = gens.len();
    if p1.arity() != n || p2.arity() != n {
        return Err(Error::ArityMismatch("pairs must match the tuple arity".into()));
    }
    for probe in all_pairs(n, max_len) {
        let left = p1.concat(&probe)?.concat(&p1.inverse())?.evaluate(gens)?;
        let right = p2.concat(&probe)?.concat(&p2.inverse())?.evaluate(gens)?;
        if left != right {
            return Ok(Some(probe));
        }
    }
    Ok(None)
}

/// A group law: a representative pair over abstract variable indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLaw {
    word: RepPair,
}

impl GroupLaw {
    pub fn new(word: RepPair) -> Self {
        GroupLaw { word }
    }

    pub fn parse(text: &str, variables: usize) -> Result<Self> {
        Ok(GroupLaw { word: RepPair::parse(text, variables)? })
    }

    pub fn variables(&self) -> usize {
        self.word.arity()
    }

    pub fn word(&self) -> &RepPair {
        &self.word
    }

    /// The commutator law `x1^-1 x2^-1 x1 x2`.
    pub fn abelian() -> Self {
        GroupLaw {
            word: RepPair::new(2, &[(1, -1), (2, -1), (1, 1), (2, 1)])
                .expect("literal letters are valid"),
        }
    }
}

/// Where law variables range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawDomain {
    /// Every tuple over the whole group; finite engines only.
    All,
    /// Every tuple over the ball of this radius around the identity
    /// (standard generators).
    Ball(usize),
    /// Seeded random tuples, reproducible across runs.
    Sample { count: usize, seed: u64 },
}

/// Result of a law check; the witness is the first failing substitution in
/// domain order.
#[derive(Clone, Debug)]
pub struct LawCheck {
    pub holds: bool,
    pub witness: Option<Vec<GroupElement>>,
    pub tuples_checked: usize,
}

/// Evaluates `μ(x_1, ..., x_k) = e` over the requested domain.
pub fn check_group_law(engine: &Engine, law: &GroupLaw, domain: LawDomain) -> Result<LawCheck> {
    let vars = law.variables();
    let identity = engine.identity();
    let pool: Vec<GroupElement> = match domain {
        LawDomain::All => engine.enumerate_all()?,
        LawDomain::Ball(radius) => ball(&engine.standard_generators(), radius)?,
        LawDomain::Sample { .. } => match engine.is_finite() {
            true => engine.enumerate_all()?,
            false => ball(&engine.standard_generators(), 8)?,
        },
    };
    let mut tuples_checked = 0usize;
    let mut check = |tuple: &[GroupElement]| -> Result<Option<Vec<GroupElement>>> {
        tuples_checked += 1;
        if law.word.evaluate_on(engine, tuple)? != identity {
            Ok(Some(tuple.to_vec()))
        } else {
            Ok(None)
        }
    };
    match domain {
        LawDomain::All | LawDomain::Ball(_) => {
            let mut indices = vec![0usize; vars];
            loop {
                let tuple: Vec<GroupElement> =
                    indices.iter().map(|&i| pool[i].clone()).collect();
                if let Some(witness) = check(&tuple)? {
                    return Ok(LawCheck { holds: false, witness: Some(witness), tuples_checked });
                }
                let mut pos = vars;
                loop {
                    if pos == 0 {
                        return Ok(LawCheck { holds: true, witness: None, tuples_checked });
                    }
                    pos -= 1;
                    indices[pos] += 1;
                    if indices[pos] < pool.len() {
                        break;
                    }
                    indices[pos] = 0;
                }
            }
        }
        LawDomain::Sample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let tuple: Vec<GroupElement> =
                    (0..vars).map(|_| pool[rng.random_range(0..pool.len())].clone()).collect();
                if let Some(witness) = check(&tuple)? {
                    return Ok(LawCheck { holds: false, witness: Some(witness), tuples_checked });
                }
            }
            Ok(LawCheck { holds: true, witness: None, tuples_checked })
        }
    }
}
