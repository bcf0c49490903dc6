//! Configuration computation: the set of label tuples realized as a base
//! point ranges over the group, exactly for finite engines and by ball
//! observation for infinite ones, plus comparison up to block relabeling.

mod search;

pub use search::{
    configuration_contained, generating_tuples, partitions_into, search_matching_pair,
    strong_contained, translation_check, Certificate, MatchLibrary, MatchRecord, PairDescriptor,
    StrongCertificate, TranslationViolation, Verdict, WitnessRecord,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::engine::{ball_layers, GeneratingTuple, GroupElement};
use crate::partition::{BlockMergeMap, Label, Partition};
use crate::{Error, Result};

/// An (n+1)-tuple of block labels: where the base point and its n
/// generator-translates land.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration(Vec<Label>);

impl Configuration {
    pub fn labels(&self) -> &[Label] {
        &self.0
    }
}

/// Whether a configuration set is known exactly or observed on a ball.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Exactness {
    Exact,
    /// `radius` is the last radius at which a new configuration appeared;
    /// `saturated` means no growth was seen for a full stability window of
    /// consecutive radii afterwards. Observed sets are always subsets of the
    /// true configuration set.
    BallObserved { radius: usize, saturated: bool },
}

/// The set of configurations of a configuration pair, sorted
/// lexicographically (the canonical output order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationSet {
    n: usize,
    m: usize,
    configs: BTreeSet<Configuration>,
    exactness: Exactness,
}

impl ConfigurationSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn exactness(&self) -> Exactness {
        self.exactness
    }

    pub fn iter(&self) -> impl Iterator<Item = &Configuration> {
        self.configs.iter()
    }

    pub fn contains(&self, labels: &[Label]) -> bool {
        self.configs.contains(&Configuration(labels.to_vec()))
    }

    pub fn is_subset(&self, other: &ConfigurationSet) -> bool {
        self.configs.is_subset(&other.configs)
    }

    /// Configurations as plain label vectors, sorted.
    pub fn to_rows(&self) -> Vec<Vec<Label>> {
        self.configs.iter().map(|c| c.0.clone()).collect()
    }
}

/// The configuration of one base point: `c_0` labels `x_0` and `c_k` labels
/// `g_k x_0`.
pub fn configuration_of(
    x0: &GroupElement,
    gens: &GeneratingTuple,
    part: &Partition,
) -> Result<Configuration> {
    let engine = gens.engine();
    let mut labels = Vec::with_capacity(gens.len() + 1);
    labels.push(part.classify(x0)?);
    for g in gens.elements() {
        labels.push(part.classify(&engine.multiply(g, x0)?)?);
    }
    Ok(Configuration(labels))
}

/// Exact configuration set of a finite engine, enumerating every base point.
pub fn configuration_set_finite(
    gens: &GeneratingTuple,
    part: &Partition,
) -> Result<ConfigurationSet> {
    let engine = gens.engine();
    let all = engine.enumerate_all()?;
    let mut configs = BTreeSet::new();
    for x0 in &all {
        configs.insert(configuration_of(x0, gens, part)?);
    }
    Ok(ConfigurationSet { n: gens.len(), m: part.block_count(), configs, exactness: Exactness::Exact })
}

/// Ball-observed configuration set for infinite engines: base points range
/// over balls of increasing radius until either `max_radius` is reached or
/// the set stops growing for `stability_window` consecutive radii.
///
/// With a ball-explicit partition, base points whose translates leave the
/// stated domain are skipped.
pub fn configuration_set_ball(
    gens: &GeneratingTuple,
    part: &Partition,
    max_radius: usize,
    stability_window: usize,
) -> Result<ConfigurationSet> {
    if stability_window == 0 {
        return Err(Error::Invalid("stability window must be positive".into()));
    }
    let layers = ball_layers(gens, max_radius)?;
    let mut configs: BTreeSet<Configuration> = BTreeSet::new();
    let mut last_growth = 0usize;
    let mut quiet_streak = 0usize;
    let mut saturated = false;
    for (radius, layer) in layers.iter().enumerate() {
        let mut grew = false;
        for x0 in layer {
            match configuration_of(x0, gens, part) {
                Ok(c) => grew |= configs.insert(c),
                Err(Error::ClassificationDomain(_)) if !part.is_total() => continue,
                Err(e) => return Err(e),
            }
        }
        if grew {
            last_growth = radius;
            quiet_streak = 0;
        } else if radius > 0 {
            quiet_streak += 1;
            if quiet_streak >= stability_window {
                saturated = true;
                break;
            }
        }
    }
    Ok(ConfigurationSet {
        n: gens.len(),
        m: part.block_count(),
        configs,
        exactness: Exactness::BallObserved { radius: last_growth, saturated },
    })
}

/// Image of a configuration set under a block merge map, deduplicated.
pub fn coarsen_config_set(
    cs: &ConfigurationSet,
    map: &BlockMergeMap,
) -> Result<ConfigurationSet> {
    if map.fine_count() != cs.m {
        return Err(Error::ArityMismatch(format!(
            "merge map over {} labels applied to a set with m = {}",
            map.fine_count(),
            cs.m
        )));
    }
    let configs = cs
        .configs
        .iter()
        .map(|c| Configuration(c.0.iter().map(|&l| map.image(l)).collect()))
        .collect();
    Ok(ConfigurationSet { n: cs.n, m: map.coarse_count(), configs, exactness: cs.exactness })
}

/// Applies a label bijection to every configuration.
fn relabel_set(cs: &ConfigurationSet, bijection: &[Label]) -> ConfigurationSet {
    let configs = cs
        .configs
        .iter()
        .map(|c| Configuration(c.0.iter().map(|&l| bijection[l - 1]).collect()))
        .collect();
    ConfigurationSet { n: cs.n, m: cs.m, configs, exactness: cs.exactness }
}

/// Canonical form: the lexicographically minimal relabeling of the sorted
/// configuration list, together with one bijection achieving it. Two sets are
/// equal up to relabeling iff their canonical forms coincide.
pub(crate) fn canonical_form(cs: &ConfigurationSet) -> (Vec<Vec<Label>>, Vec<Label>) {
    let m = cs.m;
    let mut best: Option<(Vec<Vec<Label>>, Vec<Label>)> = None;
    let mut perm: Vec<Label> = (1..=m).collect();
    loop {
        let rows = relabel_set(cs, &perm).to_rows();
        match &best {
            Some((b, _)) if *b <= rows => {}
            _ => best = Some((rows, perm.clone())),
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least the identity permutation is tried")
}

fn next_permutation(perm: &mut [Label]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A label bijection carrying the first set onto the second, if one exists.
/// The search canonicalizes both sides, with per-label occurrence counts as a
/// cheap pre-filter.
pub fn sets_equal_up_to_relabel(
    a: &ConfigurationSet,
    b: &ConfigurationSet,
) -> Option<Vec<Label>> {
    if a.n != b.n || a.m != b.m || a.len() != b.len() {
        return None;
    }
    let fingerprint = |cs: &ConfigurationSet| -> Vec<Vec<usize>> {
        let mut counts = vec![vec![0usize; cs.n + 1]; cs.m];
        for c in cs.iter() {
            for (pos, &l) in c.labels().iter().enumerate() {
                counts[l - 1][pos] += 1;
            }
        }
        counts.sort_unstable();
        counts
    };
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let (form_a, alpha) = canonical_form(a);
    let (form_b, beta) = canonical_form(b);
    if form_a != form_b {
        return None;
    }
    // alpha(a) = beta(b), so beta^-1 . alpha maps a onto b
    let mut beta_inv = vec![0usize; b.m];
    for (l, &img) in beta.iter().enumerate() {
        beta_inv[img - 1] = l + 1;
    }
    let pi: Vec<Label> = alpha.iter().map(|&l| beta_inv[l - 1]).collect();
    debug_assert_eq!(relabel_set(a, &pi).configs, b.configs);
    Some(pi)
}
