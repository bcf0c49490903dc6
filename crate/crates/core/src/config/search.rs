//! Exhaustive containment and strong-containment search over finite engines,
//! with re-checkable certificates. Candidate spaces are enumerated in a fixed
//! lexicographic order and configuration sets are compared through their
//! canonical (lexicographically minimal) relabelings, which removes the m!
//! label factor.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{canonical_form, configuration_set_finite, ConfigurationSet};
use crate::engine::{Engine, GeneratingTuple};
use crate::partition::{Label, Partition};
use crate::{Error, Result};

/// All generating n-tuples of a finite engine, in lexicographic order over
/// element indices. Repeats and the identity are permitted as components;
/// generation is what is checked.
pub fn generating_tuples(engine: &Engine, n: usize) -> Result<Vec<GeneratingTuple>> {
    let group = engine.finite_group().ok_or(Error::InfiniteEngine)?;
    if n == 0 {
        return Err(Error::Invalid("tuple length must be positive".into()));
    }
    let order = group.order();
    let mut out = Vec::new();
    let mut indices = vec![0usize; n];
    loop {
        if group.closure(&indices).len() == order {
            let elements = indices.iter().map(|&i| engine.element(i)).collect::<Result<_>>()?;
            out.push(GeneratingTuple::new_verified(engine.clone(), elements));
        }
        // odometer increment, most significant first
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            indices[pos] += 1;
            if indices[pos] < order {
                break;
            }
            indices[pos] = 0;
        }
    }
}

/// All partitions of a finite engine into exactly `m` nonempty blocks, as
/// restricted-growth strings in lexicographic order with first-occurrence
/// (canonical) labels.
pub fn partitions_into(engine: &Engine, m: usize) -> Result<Vec<Partition>> {
    let order = engine.order().ok_or(Error::InfiniteEngine)?;
    if m == 0 {
        return Err(Error::Invalid("block count must be positive".into()));
    }
    let mut out = Vec::new();
    if m > order {
        return Ok(out);
    }
    let mut labels = vec![0usize; order];
    labels[0] = 1;
    rgs_recurse(engine, &mut labels, 1, 1, m, &mut out)?;
    Ok(out)
}

fn rgs_recurse(
    engine: &Engine,
    labels: &mut Vec<usize>,
    pos: usize,
    used: usize,
    m: usize,
    out: &mut Vec<Partition>,
) -> Result<()> {
    let order = labels.len();
    if pos == order {
        if used == m {
            out.push(Partition::from_labels(engine, labels.clone(), m)?);
        }
        return Ok(());
    }
    // remaining positions must still be able to reach m distinct labels
    let remaining = order - pos;
    if used + remaining < m {
        return Ok(());
    }
    let cap = (used + 1).min(m);
    for label in 1..=cap {
        labels[pos] = label;
        let next_used = used.max(label);
        rgs_recurse(engine, labels, pos + 1, next_used, m, out)?;
    }
    Ok(())
}

/// Number of candidate configuration pairs `(tuple, partition)` of a finite
/// engine at `(n, m)`, used for budget prechecks.
fn candidate_count(order: usize, n: usize, m: usize) -> u128 {
    let tuples = (order as u128).saturating_pow(n as u32);
    tuples.saturating_mul(stirling2(order, m))
}

fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        for j in (1..=k).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Canonical form of a configuration set: sorted rows after the
/// lexicographically minimal relabeling.
type CanonForm = Vec<Vec<Label>>;

/// (canonical form, canonicalizing bijection, partition label vector) of one
/// candidate configuration pair.
type CandidateRecord = (CanonForm, Vec<Label>, Vec<Label>);

struct LibEntry {
    tuple_idx: usize,
    labels: Vec<Label>,
    beta: Vec<Label>,
}

struct LibraryLevel {
    tuples: Vec<GeneratingTuple>,
    partition_count: usize,
    entries: HashMap<CanonForm, LibEntry>,
}

/// Per-(n, m) index of every configuration set a finite engine can realize,
/// keyed by canonical form and remembering the lexicographically first
/// realizing pair.
pub struct MatchLibrary {
    engine: Engine,
    levels: HashMap<(usize, usize), LibraryLevel>,
}

impl MatchLibrary {
    pub fn new(engine: Engine) -> Self {
        MatchLibrary { engine, levels: HashMap::new() }
    }

    fn level(&mut self, n: usize, m: usize) -> Result<&LibraryLevel> {
        if !self.levels.contains_key(&(n, m)) {
            let tuples = generating_tuples(&self.engine, n)?;
            let partitions = partitions_into(&self.engine, m)?;
            let mut candidates: Vec<(usize, usize)> = Vec::new();
            for t in 0..tuples.len() {
                for p in 0..partitions.len() {
                    candidates.push((t, p));
                }
            }
            let computed: Vec<CandidateRecord> = candidates
                .par_iter()
                .map(|&(t, p)| {
                    let cs = configuration_set_finite(&tuples[t], &partitions[p])?;
                    let (form, beta) = canonical_form(&cs);
                    Ok((form, beta, partitions[p].labels_vec()?))
                })
                .collect::<Result<_>>()?;
            let mut entries: HashMap<CanonForm, LibEntry> = HashMap::new();
            for ((t, _), (form, beta, labels)) in candidates.into_iter().zip(computed) {
                entries
                    .entry(form)
                    .or_insert(LibEntry { tuple_idx: t, labels, beta });
            }
            self.levels.insert(
                (n, m),
                LibraryLevel { tuples, partition_count: partitions.len(), entries },
            );
        }
        Ok(&self.levels[&(n, m)])
    }

    /// Size of the candidate space at a level, for certificates.
    pub fn candidates_at(&mut self, n: usize, m: usize) -> Result<(usize, usize)> {
        let level = self.level(n, m)?;
        Ok((level.tuples.len(), level.partition_count))
    }

    /// A pair `(tuple, partition)` of this engine whose exact configuration
    /// set equals the target as a labeled set, or `None` after exhausting the
    /// candidate space. The partition comes back relabeled so that equality
    /// holds literally, and the result is re-verified by recomputation.
    pub fn find_match(
        &mut self,
        target: &ConfigurationSet,
    ) -> Result<Option<(GeneratingTuple, Partition)>> {
        let engine = self.engine.clone();
        let level = self.level(target.n(), target.m())?;
        let (form, alpha) = canonical_form(target);
        let Some(entry) = level.entries.get(&form) else {
            return Ok(None);
        };
        // alpha(target) = beta(candidate), so relabel the candidate's blocks
        // by alpha^-1 . beta to realize the target literally.
        let mut alpha_inv = vec![0usize; alpha.len()];
        for (l, &img) in alpha.iter().enumerate() {
            alpha_inv[img - 1] = l + 1;
        }
        let sigma: Vec<Label> = entry.beta.iter().map(|&l| alpha_inv[l - 1]).collect();
        let relabeled: Vec<Label> = entry.labels.iter().map(|&l| sigma[l - 1]).collect();
        let partition = Partition::from_labels(&engine, relabeled, target.m())?;
        let tuple = level.tuples[entry.tuple_idx].clone();
        let check = configuration_set_finite(&tuple, &partition)?;
        assert_eq!(
            check.to_rows(),
            target.to_rows(),
            "matched pair must reproduce the target exactly"
        );
        Ok(Some((tuple, partition)))
    }
}

/// Searches all generating n-tuples and all ordered m-block partitions of a
/// finite engine for a pair realizing the target configuration set.
pub fn search_matching_pair(
    target: &ConfigurationSet,
    engine: &Engine,
) -> Result<Option<(GeneratingTuple, Partition)>> {
    MatchLibrary::new(engine.clone()).find_match(target)
}

/// A configuration pair of a finite engine in serializable form: generator
/// element indices plus the block label of every element in table order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDescriptor {
    pub gens: Vec<usize>,
    pub partition: Vec<Label>,
    pub m: usize,
}

impl PairDescriptor {
    pub fn from_parts(gens: &GeneratingTuple, partition: &Partition) -> Result<Self> {
        Ok(PairDescriptor {
            gens: gens
                .elements()
                .iter()
                .map(|e| e.finite_index().expect("finite engine element"))
                .collect(),
            partition: partition.labels_vec()?,
            m: partition.block_count(),
        })
    }

    /// Reconstructs the pair against an engine, re-verifying generation.
    pub fn realize(&self, engine: &Engine) -> Result<(GeneratingTuple, Partition)> {
        let elements = self.gens.iter().map(|&i| engine.element(i)).collect::<Result<Vec<_>>>()?;
        let tuple = engine.generating_tuple(elements)?;
        let partition = Partition::from_labels(engine, self.partition.clone(), self.m)?;
        Ok((tuple, partition))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every configuration pair within the bounds was matched; this is a
    /// bounded verdict, not a proof of full containment.
    ContainedWithinBounds,
    NotContained,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchRecord {
    pub n: usize,
    pub m: usize,
    pub target: PairDescriptor,
    pub matched: PairDescriptor,
}

/// The lexicographically first configuration pair with no match, plus the
/// exhausted bounds of the inner search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub m: usize,
    pub target: PairDescriptor,
    pub target_configurations: Vec<Vec<Label>>,
    pub tuples_examined: usize,
    pub partitions_examined: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub max_n: usize,
    pub max_m: usize,
    pub targets_checked: usize,
    pub matches: Vec<MatchRecord>,
    pub witness: Option<WitnessRecord>,
}

/// Decides `Con(G) ⊆ Con(H)` exhaustively within `(max_n, max_m)`.
///
/// Targets are enumerated in lexicographic order over `(n, m, tuple,
/// partition)`; the first unmatched target becomes the witness. The `budget`
/// caps the total candidate count on both sides before anything is computed.
pub fn configuration_contained(
    g: &Engine,
    h: &Engine,
    max_n: usize,
    max_m: usize,
    budget: u64,
) -> Result<Certificate> {
    if max_n == 0 || max_m == 0 {
        return Err(Error::Invalid("bounds must be positive".into()));
    }
    let order_g = g.order().ok_or(Error::InfiniteEngine)?;
    let order_h = h.order().ok_or(Error::InfiniteEngine)?;
    let mut cost = 0u128;
    for n in 1..=max_n {
        for m in 1..=max_m {
            cost = cost
                .saturating_add(candidate_count(order_g, n, m))
                .saturating_add(candidate_count(order_h, n, m));
        }
    }
    if cost > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "containment search would examine {cost} candidate pairs (budget {budget})"
        )));
    }

    let mut library = MatchLibrary::new(h.clone());
    let mut matches = Vec::new();
    let mut targets_checked = 0usize;
    for n in 1..=max_n {
        let tuples = generating_tuples(g, n)?;
        if tuples.is_empty() {
            continue;
        }
        for m in 1..=max_m {
            let partitions = partitions_into(g, m)?;
            if partitions.is_empty() {
                continue;
            }
            // force the library level so that parallel lookups borrow it
            library.level(n, m)?;
            let mut targets: Vec<(usize, usize)> = Vec::new();
            for t in 0..tuples.len() {
                for p in 0..partitions.len() {
                    targets.push((t, p));
                }
            }
            let level_results: Vec<Option<MatchRecord>> = targets
                .par_iter()
                .map(|&(t, p)| {
                    let target_set = configuration_set_finite(&tuples[t], &partitions[p])?;
                    let (form, alpha) = canonical_form(&target_set);
                    let level = &library.levels[&(n, m)];
                    match level.entries.get(&form) {
                        None => Ok(None),
                        Some(entry) => {
                            let mut alpha_inv = vec![0usize; alpha.len()];
                            for (l, &img) in alpha.iter().enumerate() {
                                alpha_inv[img - 1] = l + 1;
                            }
                            let sigma: Vec<Label> =
                                entry.beta.iter().map(|&l| alpha_inv[l - 1]).collect();
                            let relabeled: Vec<Label> =
                                entry.labels.iter().map(|&l| sigma[l - 1]).collect();
                            Ok(Some(MatchRecord {
                                n,
                                m,
                                target: PairDescriptor::from_parts(&tuples[t], &partitions[p])?,
                                matched: PairDescriptor {
                                    gens: level.tuples[entry.tuple_idx]
                                        .elements()
                                        .iter()
                                        .map(|e| e.finite_index().expect("finite element"))
                                        .collect(),
                                    partition: relabeled,
                                    m,
                                },
                            }))
                        }
                    }
                })
                .collect::<Result<_>>()?;
            for (idx, result) in level_results.into_iter().enumerate() {
                targets_checked += 1;
                match result {
                    Some(record) => matches.push(record),
                    None => {
                        let (t, p) = targets[idx];
                        let target_set = configuration_set_finite(&tuples[t], &partitions[p])?;
                        let (tuples_examined, partitions_examined) =
                            library.candidates_at(n, m)?;
                        return Ok(Certificate {
                            verdict: Verdict::NotContained,
                            max_n,
                            max_m,
                            targets_checked,
                            matches: Vec::new(),
                            witness: Some(WitnessRecord {
                                n,
                                m,
                                target: PairDescriptor::from_parts(&tuples[t], &partitions[p])?,
                                target_configurations: target_set.to_rows(),
                                tuples_examined,
                                partitions_examined,
                            }),
                        });
                    }
                }
            }
        }
    }
    Ok(Certificate {
        verdict: Verdict::ContainedWithinBounds,
        max_n,
        max_m,
        targets_checked,
        matches,
        witness: None,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StrongCertificate {
    pub verdict: Verdict,
    pub max_m: usize,
    pub gens_g: Vec<usize>,
    pub gens_h: Vec<usize>,
    pub targets_checked: usize,
    pub matches: Vec<MatchRecord>,
    pub witness: Option<WitnessRecord>,
}

/// Strong containment with fixed generating tuples: every partition of G with
/// at most `max_m` blocks must be matched by some partition of H against the
/// fixed tuples.
pub fn strong_contained(
    gens_g: &GeneratingTuple,
    gens_h: &GeneratingTuple,
    max_m: usize,
) -> Result<StrongCertificate> {
    if gens_g.len() != gens_h.len() {
        return Err(Error::ArityMismatch(format!(
            "generating tuples have lengths {} and {}",
            gens_g.len(),
            gens_h.len()
        )));
    }
    if max_m == 0 {
        return Err(Error::Invalid("max_m must be positive".into()));
    }
    let g = gens_g.engine().clone();
    let h = gens_h.engine().clone();
    g.order().ok_or(Error::InfiniteEngine)?;
    h.order().ok_or(Error::InfiniteEngine)?;
    let n = gens_g.len();
    let gens_g_idx: Vec<usize> =
        gens_g.elements().iter().map(|e| e.finite_index().expect("finite")).collect();
    let gens_h_idx: Vec<usize> =
        gens_h.elements().iter().map(|e| e.finite_index().expect("finite")).collect();

    let mut matches = Vec::new();
    let mut targets_checked = 0usize;
    for m in 1..=max_m {
        let targets = partitions_into(&g, m)?;
        let candidates = partitions_into(&h, m)?;
        let computed: Vec<CandidateRecord> = candidates
            .par_iter()
            .map(|p| {
                let cs = configuration_set_finite(gens_h, p)?;
                let (form, beta) = canonical_form(&cs);
                Ok((form, beta, p.labels_vec()?))
            })
            .collect::<Result<_>>()?;
        let mut entries: HashMap<CanonForm, (Vec<Label>, Vec<Label>)> = HashMap::new();
        for (form, beta, labels) in computed {
            entries.entry(form).or_insert((beta, labels));
        }
        let results: Vec<Option<MatchRecord>> = targets
            .par_iter()
            .map(|target_part| {
                let target_set = configuration_set_finite(gens_g, target_part)?;
                let (form, alpha) = canonical_form(&target_set);
                match entries.get(&form) {
                    None => Ok(None),
                    Some((beta, labels)) => {
                        let mut alpha_inv = vec![0usize; alpha.len()];
                        for (l, &img) in alpha.iter().enumerate() {
                            alpha_inv[img - 1] = l + 1;
                        }
                        let sigma: Vec<Label> = beta.iter().map(|&l| alpha_inv[l - 1]).collect();
                        let relabeled: Vec<Label> = labels.iter().map(|&l| sigma[l - 1]).collect();
                        Ok(Some(MatchRecord {
                            n,
                            m,
                            target: PairDescriptor {
                                gens: gens_g_idx.clone(),
                                partition: target_part.labels_vec()?,
                                m,
                            },
                            matched: PairDescriptor {
                                gens: gens_h_idx.clone(),
                                partition: relabeled,
                                m,
                            },
                        }))
                    }
                }
            })
            .collect::<Result<_>>()?;
        for (idx, result) in results.into_iter().enumerate() {
            targets_checked += 1;
            match result {
                Some(record) => matches.push(record),
                None => {
                    let target_set = configuration_set_finite(gens_g, &targets[idx])?;
                    let witness = WitnessRecord {
                        n,
                        m,
                        target: PairDescriptor {
                            gens: gens_g_idx.clone(),
                            partition: targets[idx].labels_vec()?,
                            m,
                        },
                        target_configurations: target_set.to_rows(),
                        tuples_examined: 1,
                        partitions_examined: candidates.len(),
                    };
                    return Ok(StrongCertificate {
                        verdict: Verdict::NotContained,
                        max_m,
                        gens_g: gens_g_idx,
                        gens_h: gens_h_idx,
                        targets_checked,
                        matches: Vec::new(),
                        witness: Some(witness),
                    });
                }
            }
        }
    }
    Ok(StrongCertificate {
        verdict: Verdict::ContainedWithinBounds,
        max_m,
        gens_g: gens_g_idx,
        gens_h: gens_h_idx,
        targets_checked,
        matches,
        witness: None,
    })
}

/// One failed translation implication between corresponding sigma-algebra
/// members; masks select blocks by label bit `l - 1`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TranslationViolation {
    pub generator: usize,
    pub a1_mask: u64,
    pub a2_mask: u64,
    pub equality_case: bool,
}

/// Checks the translation lemma on a matched pair: whenever `g_r A1 ⊆ A2`
/// for members of the sigma-algebra over E, the corresponding members over F
/// must satisfy `h_r B1 ⊆ B2`, and likewise with equality. Exhaustive over
/// all member pairs; both configuration sets must already agree as labeled
/// sets.
pub fn translation_check(
    gens_g: &GeneratingTuple,
    part_e: &Partition,
    gens_h: &GeneratingTuple,
    part_f: &Partition,
) -> Result<Vec<TranslationViolation>> {
    if gens_g.len() != gens_h.len() {
        return Err(Error::ArityMismatch("tuples differ in length".into()));
    }
    let m = part_e.block_count();
    if part_f.block_count() != m {
        return Err(Error::ArityMismatch("partitions differ in block count".into()));
    }
    let con_g = configuration_set_finite(gens_g, part_e)?;
    let con_h = configuration_set_finite(gens_h, part_f)?;
    if con_g.to_rows() != con_h.to_rows() {
        return Err(Error::Invalid(
            "translation check requires equal labeled configuration sets".into(),
        ));
    }
    if m > 20 {
        return Err(Error::Invalid("translation check supports at most 20 blocks".into()));
    }
    let block_bits = |part: &Partition| -> Result<Vec<u64>> {
        let labels = part.labels_vec()?;
        if labels.len() > 64 {
            return Err(Error::Invalid("translation check supports order at most 64".into()));
        }
        let mut bits = vec![0u64; m];
        for (idx, &l) in labels.iter().enumerate() {
            bits[l - 1] |= 1 << idx;
        }
        Ok(bits)
    };
    let bits_g = block_bits(part_e)?;
    let bits_h = block_bits(part_f)?;
    let member = |bits: &[u64], mask: u64| -> u64 {
        (0..m).filter(|&l| mask >> l & 1 == 1).fold(0u64, |acc, l| acc | bits[l])
    };
    let translate = |engine: &Engine, gen_idx: usize, set: u64| -> u64 {
        let group = engine.finite_group().expect("finite engine");
        let mut out = 0u64;
        for idx in 0..group.order() {
            if set >> idx & 1 == 1 {
                out |= 1 << group.mul(gen_idx, idx);
            }
        }
        out
    };
    let mut violations = Vec::new();
    for r in 0..gens_g.len() {
        let gr = gens_g.elements()[r].finite_index().expect("finite");
        let hr = gens_h.elements()[r].finite_index().expect("finite");
        for mask1 in 0u64..1 << m {
            let a1 = member(&bits_g, mask1);
            let b1 = member(&bits_h, mask1);
            let ga1 = translate(gens_g.engine(), gr, a1);
            let hb1 = translate(gens_h.engine(), hr, b1);
            for mask2 in 0u64..1 << m {
                let a2 = member(&bits_g, mask2);
                let b2 = member(&bits_h, mask2);
                if ga1 & !a2 == 0 && hb1 & !b2 != 0 {
                    violations.push(TranslationViolation {
                        generator: r + 1,
                        a1_mask: mask1,
                        a2_mask: mask2,
                        equality_case: false,
                    });
                }
                if ga1 == a2 && hb1 != b2 {
                    violations.push(TranslationViolation {
                        generator: r + 1,
                        a1_mask: mask1,
                        a2_mask: mask2,
                        equality_case: true,
                    });
                }
            }
        }
    }
    Ok(violations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{cyclic, symmetric3};

    fn z(n: usize) -> Engine {
        Engine::finite(cyclic(n))
    }

    fn v4() -> Engine {
        Engine::finite(cyclic(2).direct_product(&cyclic(2)))
    }

    #[test]
    fn generating_tuples_enumerates_in_order() {
        let z4 = z(4);
        let singles = generating_tuples(&z4, 1).unwrap();
        let idx: Vec<usize> =
            singles.iter().map(|t| t.elements()[0].finite_index().unwrap()).collect();
        assert_eq!(idx, vec![1, 3]);
        assert!(generating_tuples(&v4(), 1).unwrap().is_empty());
    }

    #[test]
    fn partition_enumeration_counts() {
        let z4 = z(4);
        // Stirling numbers of the second kind for n = 4
        assert_eq!(partitions_into(&z4, 1).unwrap().len(), 1);
        assert_eq!(partitions_into(&z4, 2).unwrap().len(), 7);
        assert_eq!(partitions_into(&z4, 3).unwrap().len(), 6);
        assert_eq!(partitions_into(&z4, 4).unwrap().len(), 1);
        assert!(partitions_into(&z4, 5).unwrap().is_empty());
    }

    #[test]
    fn search_finds_identity_instance() {
        let z2 = z(2);
        let gens = z2.generating_tuple(vec![z2.element(1).unwrap()]).unwrap();
        let part = Partition::from_labels(&z2, vec![1, 2], 2).unwrap();
        let target = configuration_set_finite(&gens, &part).unwrap();
        let (t, p) = search_matching_pair(&target, &z2).unwrap().unwrap();
        let again = configuration_set_finite(&t, &p).unwrap();
        assert_eq!(again.to_rows(), target.to_rows());
    }

    #[test]
    fn search_exhausts_z3_for_z2_target() {
        // 2 generating singletons x 3 two-block partitions = 6 candidates
        let z2 = z(2);
        let gens = z2.generating_tuple(vec![z2.element(1).unwrap()]).unwrap();
        let part = Partition::from_labels(&z2, vec![1, 2], 2).unwrap();
        let target = configuration_set_finite(&gens, &part).unwrap();
        assert!(search_matching_pair(&target, &z(3)).unwrap().is_none());
    }

    #[test]
    fn trivial_partition_target_matches_any_group() {
        let z4 = z(4);
        let gens = z4.generating_tuple(vec![z4.element(1).unwrap()]).unwrap();
        let target = configuration_set_finite(&gens, &Partition::trivial()).unwrap();
        assert!(search_matching_pair(&target, &z(6)).unwrap().is_some());
    }

    #[test]
    fn containment_of_a_group_in_itself() {
        let cert = configuration_contained(&z(2), &z(2), 1, 2, 1 << 30).unwrap();
        assert_eq!(cert.verdict, Verdict::ContainedWithinBounds);
        assert!(cert.witness.is_none());
        assert_eq!(cert.matches.len(), cert.targets_checked);
    }

    #[test]
    fn z4_is_not_contained_in_klein_four() {
        let cert = configuration_contained(&z(4), &v4(), 2, 4, 1 << 30).unwrap();
        assert_eq!(cert.verdict, Verdict::NotContained);
        let w = cert.witness.unwrap();
        // V4 has no generating 1-tuples, so the first n=1 target already fails
        assert_eq!(w.n, 1);
        assert_eq!(w.tuples_examined, 0);
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            configuration_contained(&z(4), &v4(), 2, 4, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn strong_containment_z2_with_itself() {
        let z2 = z(2);
        let gens = z2.generating_tuple(vec![z2.element(1).unwrap()]).unwrap();
        let cert = strong_contained(&gens, &gens, 2).unwrap();
        assert_eq!(cert.verdict, Verdict::ContainedWithinBounds);
        assert_eq!(cert.targets_checked, 2);
    }

    #[test]
    fn strong_containment_rejects_arity_mismatch() {
        let z2 = z(2);
        let z4 = z(4);
        let g = z2.generating_tuple(vec![z2.element(1).unwrap()]).unwrap();
        let h = z4
            .generating_tuple(vec![z4.element(1).unwrap(), z4.element(1).unwrap()])
            .unwrap();
        assert!(matches!(strong_contained(&g, &h, 2), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn translation_lemma_holds_on_matched_s3_pairs() {
        let s3 = Engine::finite(symmetric3());
        let a = s3.element_by_name("(0 1)").unwrap();
        let b = s3.element_by_name("(0 2)").unwrap();
        let gens = s3.generating_tuple(vec![a, b]).unwrap();
        for part in partitions_into(&s3, 3).unwrap().into_iter().take(12) {
            let target = configuration_set_finite(&gens, &part).unwrap();
            let (t, p) = search_matching_pair(&target, &s3).unwrap().unwrap();
            let violations = translation_check(&gens, &part, &t, &p).unwrap();
            assert!(violations.is_empty());
        }
    }

    #[test]
    fn translation_check_requires_equal_sets() {
        let z4 = z(4);
        let gens = z4.generating_tuple(vec![z4.element(1).unwrap()]).unwrap();
        let p1 = Partition::from_labels(&z4, vec![1, 2, 2, 2], 2).unwrap();
        let p2 = Partition::from_labels(&z4, vec![1, 1, 2, 2], 2).unwrap();
        assert!(translation_check(&gens, &p1, &gens, &p2).is_err());
    }
}
