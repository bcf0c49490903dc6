//! The three golden configuration pair families and desk-scale verifiers for
//! the golden implication, the free-group translation relations, and block
//! structure on balls.
//!
//! Goldenness itself quantifies over every rival configuration pair with the
//! same configuration set, an unsearchable space for infinite groups; the
//! verifiers here check the defining implication against explicitly supplied
//! rivals and report any counterexample found within the stated bounds.

use serde::Serialize;

use crate::engine::{ball, Engine, FiniteGroup, GeneratingTuple, GroupElement};
use crate::partition::{Classifier, Label, Partition};
use crate::words::reduced_pairs;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoldenFamily {
    FreeFirstLetter,
    ZnfSign,
    DinfFive,
    UserSupplied,
}

impl GoldenFamily {
    pub fn name(&self) -> &'static str {
        match self {
            GoldenFamily::FreeFirstLetter => "free-first-letter",
            GoldenFamily::ZnfSign => "znf-sign",
            GoldenFamily::DinfFive => "dinf-five",
            GoldenFamily::UserSupplied => "user-supplied",
        }
    }
}

/// A candidate golden configuration pair: generating tuple plus a partition
/// whose identity block is the singleton `{e}`.
#[derive(Clone, Debug)]
pub struct GoldenCandidate {
    family: GoldenFamily,
    gens: GeneratingTuple,
    part: Partition,
    identity_label: Label,
}

impl GoldenCandidate {
    /// Assembles a candidate, checking that the identity classifies to the
    /// designated block.
    pub fn from_parts(
        family: GoldenFamily,
        gens: GeneratingTuple,
        part: Partition,
        identity_label: Label,
    ) -> Result<Self> {
        let identity = gens.engine().identity();
        let found = part.classify(&identity)?;
        if found != identity_label {
            return Err(Error::InvalidPartition(format!(
                "identity classifies to block {found}, expected {identity_label}"
            )));
        }
        Ok(GoldenCandidate { family, gens, part, identity_label })
    }

    pub fn family(&self) -> GoldenFamily {
        self.family
    }

    pub fn gens(&self) -> &GeneratingTuple {
        &self.gens
    }

    pub fn partition(&self) -> &Partition {
        &self.part
    }

    pub fn identity_label(&self) -> Label {
        self.identity_label
    }

    pub fn engine(&self) -> &Engine {
        self.gens.engine()
    }
}

/// The free-group family: `F_n` with the first-letter partition
/// `{E0, E_1..E_n, E_-1..E_-n}`. Requires `n >= 2`.
pub fn free_group_partition(n: usize) -> Result<GoldenCandidate> {
    if n < 2 {
        return Err(Error::Invalid("the free family needs a non-abelian free group (n >= 2)".into()));
    }
    let engine = Engine::free(n);
    let gens = engine.standard_generators();
    let part = Partition::symbolic(Classifier::FreeFirstLetter { rank: n });
    GoldenCandidate::from_parts(GoldenFamily::FreeFirstLetter, gens, part, 1)
}

/// The infinite dihedral family: gens `(x, y)` with the five-block partition.
pub fn dinf_partition() -> GoldenCandidate {
    let engine = Engine::dihedral_infinite();
    let gens = engine.standard_generators();
    let part = Partition::symbolic(Classifier::DinfFiveBlock);
    GoldenCandidate::from_parts(GoldenFamily::DinfFive, gens, part, 1)
        .expect("the dihedral identity block is block 1")
}

/// The `Z^n x F` family: curated generators plus the atoms of the
/// sigma-algebra generated by the generator singletons and the sign cells.
pub fn znf_sigma_candidate(n: usize, finite: FiniteGroup) -> Result<GoldenCandidate> {
    if n == 0 {
        return Err(Error::Invalid("rank must be positive".into()));
    }
    let classifier = Classifier::znf(n, &finite);
    let engine = Engine::product_zn_f(n, finite);
    let gens = engine.standard_generators();
    let part = Partition::symbolic(classifier);
    let identity = engine.identity();
    let identity_label = part.classify(&identity)?;
    GoldenCandidate::from_parts(GoldenFamily::ZnfSign, gens, part, identity_label)
}

/// One failed check, with printable words and block evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub pair: Option<String>,
    pub word: String,
    pub evidence: String,
}

/// Outcome of one golden-family verification run.
#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    pub family: String,
    pub check: String,
    pub params: String,
    pub max_word_length: usize,
    pub radius: usize,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl GoldenReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn free_rank(c: &GoldenCandidate) -> Result<usize> {
    match c.engine() {
        Engine::Free { rank } => Ok(*rank),
        _ => Err(Error::Invalid("this check applies to the free family only".into())),
    }
}

/// Checks the two translation relations of the free family,
/// `f_k (F_n \ E_-k) = E_k` and `f_k E_-k = F_n \ E_k`, on the ball of the
/// given radius: four membership implications per element and generator,
/// covering both inclusions of both equalities.
pub fn verify_translation_relations(c: &GoldenCandidate, radius: usize) -> Result<GoldenReport> {
    if c.family() != GoldenFamily::FreeFirstLetter {
        return Err(Error::Invalid(format!(
            "translation relations are stated for the free family, not {}",
            c.family().name()
        )));
    }
    let n = free_rank(c)?;
    let engine = c.engine();
    let part = c.partition();
    let elements = ball(c.gens(), radius)?;
    let mut violations = Vec::new();
    let mut checked = 0usize;
    for k in 1..=n {
        let label_pos = 1 + k;
        let label_neg = 1 + n + k;
        let fk = engine.free_letter(k, 1)?;
        let fk_inv = engine.free_letter(k, -1)?;
        for w in &elements {
            checked += 1;
            let lw = part.classify(w)?;
            let forward = engine.multiply(&fk, w)?;
            let lf = part.classify(&forward)?;
            if lw != label_neg && lf != label_pos {
                violations.push(Violation {
                    pair: None,
                    word: engine.show(w),
                    evidence: format!(
                        "w outside E-{k} but f{k} w = {} lands in block {lf}, not E{k}",
                        engine.show(&forward)
                    ),
                });
            }
            if lw == label_neg && lf == label_pos {
                violations.push(Violation {
                    pair: None,
                    word: engine.show(w),
                    evidence: format!(
                        "w in E-{k} but f{k} w = {} still lands in E{k}",
                        engine.show(&forward)
                    ),
                });
            }
            let backward = engine.multiply(&fk_inv, w)?;
            let lb = part.classify(&backward)?;
            if lw == label_pos && lb == label_neg {
                violations.push(Violation {
                    pair: None,
                    word: engine.show(w),
                    evidence: format!(
                        "v in E{k} but f{k}^-1 v = {} lands in E-{k}",
                        engine.show(&backward)
                    ),
                });
            }
            if lw != label_pos && lb != label_neg {
                violations.push(Violation {
                    pair: None,
                    word: engine.show(w),
                    evidence: format!(
                        "v outside E{k} but f{k}^-1 v = {} misses E-{k}",
                        engine.show(&backward)
                    ),
                });
            }
        }
    }
    Ok(GoldenReport {
        family: c.family().name().into(),
        check: "translation-relations".into(),
        params: format!("n={n}"),
        max_word_length: 0,
        radius,
        checked,
        violations,
    })
}

/// Checks the golden implication against a rival pair: for every reduced pair
/// of length at most `max_len` whose evaluation against the candidate tuple
/// is not the identity, the rival word must move the designated rival block
/// `E'` entirely off itself, tested on `E'` elements found in the ball of the
/// given radius. Rival domains that cannot classify a translate skip that
/// element.
pub fn verify_golden_implication(
    c: &GoldenCandidate,
    rival_gens: &GeneratingTuple,
    rival_part: &Partition,
    rival_identity_label: Label,
    max_len: usize,
    radius: usize,
) -> Result<GoldenReport> {
    if rival_gens.len() != c.gens().len() {
        return Err(Error::ArityMismatch(format!(
            "rival tuple has length {}, candidate has {}",
            rival_gens.len(),
            c.gens().len()
        )));
    }
    let engine = c.engine();
    let identity = engine.identity();
    let mut eprime: Vec<GroupElement> = Vec::new();
    for v in ball(rival_gens, radius)? {
        match rival_part.classify(&v) {
            Ok(l) if l == rival_identity_label => eprime.push(v),
            Ok(_) => {}
            Err(Error::ClassificationDomain(_)) if !rival_part.is_total() => {}
            Err(e) => return Err(e),
        }
    }
    let mut violations = Vec::new();
    let mut checked = 0usize;
    for pair in reduced_pairs(c.gens().len(), max_len) {
        if pair.evaluate(c.gens())? == identity {
            continue;
        }
        checked += 1;
        let w = pair.evaluate(rival_gens)?;
        for v in &eprime {
            let moved = engine.multiply(&w, v)?;
            match rival_part.classify(&moved) {
                Ok(l) if l == rival_identity_label => violations.push(Violation {
                    pair: Some(pair.to_string()),
                    word: engine.show(&w),
                    evidence: format!(
                        "W E' meets E': {} maps {} to {}",
                        engine.show(&w),
                        engine.show(v),
                        engine.show(&moved)
                    ),
                }),
                Ok(_) => {}
                Err(Error::ClassificationDomain(_)) if !rival_part.is_total() => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(GoldenReport {
        family: c.family().name().into(),
        check: "golden-implication".into(),
        params: format!("|E' sample| = {}", eprime.len()),
        max_word_length: max_len,
        radius,
        checked,
        violations,
    })
}

/// Checks the absorption rule of the free family in `F_n` itself: every
/// nonempty reduced pair evaluates into the block named by its first letter.
pub fn free_block_absorption_check(n: usize, max_len: usize) -> Result<GoldenReport> {
    let c = free_group_partition(n)?;
    let engine = c.engine();
    let part = c.partition();
    let mut violations = Vec::new();
    let mut checked = 0usize;
    for pair in reduced_pairs(n, max_len) {
        checked += 1;
        let (idx, sign) = pair.letters().next().expect("pairs are nonempty");
        let expected = if sign > 0 { 1 + idx } else { 1 + n + idx };
        let w = pair.evaluate(c.gens())?;
        let found = part.classify(&w)?;
        if found != expected {
            violations.push(Violation {
                pair: Some(pair.to_string()),
                word: engine.show(&w),
                evidence: format!("lands in block {found}, expected {expected}"),
            });
        }
    }
    Ok(GoldenReport {
        family: c.family().name().into(),
        check: "block-absorption".into(),
        params: format!("n={n}"),
        max_word_length: max_len,
        radius: 0,
        checked,
        violations,
    })
}

/// Structural check of a candidate's partition on a ball: every element
/// classifies, the identity block meets the ball only in the identity, the
/// family's singleton blocks are singletons, and the labeling agrees with a
/// first-principles classification derived from the block definitions.
pub fn verify_block_structure(c: &GoldenCandidate, radius: usize) -> Result<GoldenReport> {
    let engine = c.engine();
    let part = c.partition();
    let identity = engine.identity();
    let elements = ball(c.gens(), radius)?;
    let mut violations = Vec::new();
    let mut singleton_counts: Vec<(Label, usize)> = match c.family() {
        GoldenFamily::DinfFive => vec![(1, 0), (2, 0), (3, 0)],
        _ => vec![(c.identity_label(), 0)],
    };
    for w in &elements {
        let label = part.classify(w)?;
        if label < 1 || label > part.block_count() {
            violations.push(Violation {
                pair: None,
                word: engine.show(w),
                evidence: format!("label {label} outside 1..={}", part.block_count()),
            });
        }
        if label == c.identity_label() && *w != identity {
            violations.push(Violation {
                pair: None,
                word: engine.show(w),
                evidence: "non-identity element in the identity block".into(),
            });
        }
        for entry in singleton_counts.iter_mut() {
            if entry.0 == label {
                entry.1 += 1;
            }
        }
        if let Some(expected) = first_principles_label(c, w)? {
            if expected != label {
                violations.push(Violation {
                    pair: None,
                    word: engine.show(w),
                    evidence: format!(
                        "classifier gives {label} but first principles give {expected}"
                    ),
                });
            }
        }
    }
    for (label, count) in singleton_counts {
        if count != 1 {
            violations.push(Violation {
                pair: None,
                word: format!("block {label}"),
                evidence: format!("expected a singleton block, found {count} ball elements"),
            });
        }
    }
    Ok(GoldenReport {
        family: c.family().name().into(),
        check: "block-structure".into(),
        params: format!("m={}", part.block_count()),
        max_word_length: 0,
        radius,
        checked: elements.len(),
        violations,
    })
}

/// Independent per-element classification straight from the block
/// definitions, bypassing the classifier's arithmetic.
fn first_principles_label(c: &GoldenCandidate, w: &GroupElement) -> Result<Option<Label>> {
    match c.family() {
        GoldenFamily::FreeFirstLetter => {
            let rank = free_rank(c)?;
            let word = w.free_word().expect("free element");
            Ok(Some(match word.first() {
                None => 1,
                Some(&l) if l > 0 => 1 + l as usize,
                Some(&l) => 1 + rank + (-l) as usize,
            }))
        }
        GoldenFamily::DinfFive => {
            let word = w.dihedral_word().expect("dihedral element");
            use crate::engine::DihedralLetter::*;
            Ok(Some(match (word.first(), word.len()) {
                (None, _) => 1,
                (Some(X), 1) => 2,
                (Some(Y), 1) => 3,
                (Some(X), _) => 4,
                (Some(Y), _) => 5,
            }))
        }
        GoldenFamily::ZnfSign => {
            let Engine::Product { rank, finite } = c.engine() else {
                return Err(Error::Invalid("znf family over a non-product engine".into()));
            };
            let (vector, f) = w.product_parts().expect("product element");
            // scan the generator singletons {g_i} and {g_i g_j}
            let mut singles: Vec<Vec<i64>> = Vec::new();
            for i in 0..*rank {
                let mut v = vec![0i64; *rank];
                v[i] = 1;
                singles.push(v);
            }
            for i in 0..*rank {
                for j in i..*rank {
                    let mut v = vec![0i64; *rank];
                    v[i] += 1;
                    v[j] += 1;
                    singles.push(v);
                }
            }
            if f == finite.identity_index() {
                if let Some(pos) = singles.iter().position(|s| s[..] == *vector) {
                    return Ok(Some(pos + 1));
                }
            }
            // scan the product cells E(tau, j) for the unique one containing w
            let cells = 3usize.pow(*rank as u32);
            for t in 0..cells {
                let mut digits = Vec::with_capacity(*rank);
                let mut rem = t;
                for _ in 0..*rank {
                    digits.push(rem % 3);
                    rem /= 3;
                }
                digits.reverse();
                let inside = vector.iter().zip(&digits).all(|(&v, &d)| match d {
                    0 => v <= -1,
                    1 => v == 0,
                    _ => v >= 1,
                });
                if inside {
                    return Ok(Some(singles.len() + t * finite.order() + f + 1));
                }
            }
            Err(Error::Invalid("no sign cell contains the element".into()))
        }
        GoldenFamily::UserSupplied => Ok(None),
    }
}
