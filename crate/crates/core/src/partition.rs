//! Finite partitions and finite sigma-algebras over a group: explicit blocks
//! for finite engines, symbolic classifiers for the curated infinite engines,
//! refinement, coarsening, atoms and the similarity relation on refinements.

use std::collections::BTreeMap;

use crate::engine::{Engine, FiniteGroup, GroupElement};
use crate::{Error, Result};

/// Block labels are 1-based, matching the paper's `{1, ..., m}`.
pub type Label = usize;

/// Symbolic block classifier for infinite engines; total on its engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classifier {
    /// One block containing everything.
    Trivial,
    /// Free group `F_n`: label 1 is `{e}`, labels `1+k` hold reduced words
    /// starting with `f_k`, labels `1+n+k` those starting with `f_k^-1`.
    FreeFirstLetter { rank: usize },
    /// Infinite dihedral: `{e}`, `{x}`, `{y}`, longer words starting with x,
    /// longer words starting with y.
    DinfFiveBlock,
    /// Atoms of the sigma-algebra over `Z^n x F` generated by the generator
    /// singletons `{g_i}`, `{g_i g_j}` and the sign-pattern cells
    /// `E(tau, j) = tau(1)N x ... x tau(n)N x {x_j}` (with `0*N = {0}` and
    /// `N` excluding zero). Singleton atoms come first (e_i, then e_i + e_j
    /// for i <= j), then the cell remainders ordered by (tau, j) with tau in
    /// lexicographic order over {-1, 0, 1}^n and j in table order.
    ZnfSignAtoms { rank: usize, f_order: usize, f_identity: usize, singles: Vec<Vec<i64>> },
}

impl Classifier {
    pub fn znf(rank: usize, finite: &FiniteGroup) -> Self {
        let mut singles: Vec<Vec<i64>> = Vec::new();
        for i in 0..rank {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            singles.push(v);
        }
        for i in 0..rank {
            for j in i..rank {
                let mut v = vec![0i64; rank];
                v[i] += 1;
                v[j] += 1;
                singles.push(v);
            }
        }
        Classifier::ZnfSignAtoms {
            rank,
            f_order: finite.order(),
            f_identity: finite.identity_index(),
            singles,
        }
    }

    /// Block count of the classifier.
    pub fn block_count(&self) -> usize {
        match self {
            Classifier::Trivial => 1,
            Classifier::FreeFirstLetter { rank } => 2 * rank + 1,
            Classifier::DinfFiveBlock => 5,
            Classifier::ZnfSignAtoms { rank, f_order, singles, .. } => {
                singles.len() + 3usize.pow(*rank as u32) * f_order
            }
        }
    }

    fn classify(&self, x: &GroupElement) -> Result<Label> {
        match self {
            Classifier::Trivial => Ok(1),
            Classifier::FreeFirstLetter { rank } => {
                let word = x.free_word().ok_or_else(|| {
                    Error::EngineMismatch("free-first-letter classifier on non-free element".into())
                })?;
                match word.first() {
                    None => Ok(1),
                    Some(&l) if l > 0 => Ok(1 + l as usize),
                    Some(&l) => Ok(1 + rank + (-l) as usize),
                }
            }
            Classifier::DinfFiveBlock => {
                let word = x.dihedral_word().ok_or_else(|| {
                    Error::EngineMismatch("dinf-five-block classifier on non-dihedral element".into())
                })?;
                use crate::engine::DihedralLetter::*;
                Ok(match (word.first(), word.len()) {
                    (None, _) => 1,
                    (Some(X), 1) => 2,
                    (Some(Y), 1) => 3,
                    (Some(X), _) => 4,
                    (Some(Y), _) => 5,
                })
            }
            Classifier::ZnfSignAtoms { rank, f_order, f_identity, singles } => {
                let (vector, f) = x.product_parts().ok_or_else(|| {
                    Error::EngineMismatch("znf-sign-atoms classifier on non-product element".into())
                })?;
                if f == *f_identity {
                    if let Some(pos) = singles.iter().position(|s| s[..] == *vector) {
                        return Ok(pos + 1);
                    }
                }
                let mut pattern_rank = 0usize;
                for &c in vector.iter().take(*rank) {
                    let digit = match c.signum() {
                        -1 => 0,
                        0 => 1,
                        _ => 2,
                    };
                    pattern_rank = pattern_rank * 3 + digit;
                }
                Ok(singles.len() + pattern_rank * f_order + f + 1)
            }
        }
    }

    /// Printable description of one block, used in reports.
    pub fn describe(&self, label: Label) -> String {
        match self {
            Classifier::Trivial => "G".into(),
            Classifier::FreeFirstLetter { rank } => {
                if label == 1 {
                    "E0 = {e}".into()
                } else if label <= 1 + rank {
                    format!("E{} = words starting f{}", label - 1, label - 1)
                } else {
                    format!("E-{} = words starting f{}^-1", label - 1 - rank, label - 1 - rank)
                }
            }
            Classifier::DinfFiveBlock => match label {
                1 => "E1 = {e}".into(),
                2 => "E2 = {x}".into(),
                3 => "E3 = {y}".into(),
                4 => "E4 = words of length > 1 starting x".into(),
                _ => "E5 = words of length > 1 starting y".into(),
            },
            Classifier::ZnfSignAtoms { rank, f_order, singles, .. } => {
                if label <= singles.len() {
                    format!("singleton atom {{({:?}, e_F)}}", singles[label - 1])
                } else {
                    let cell = label - singles.len() - 1;
                    let (pattern_rank, f) = (cell / f_order, cell % f_order);
                    let mut pattern = Vec::with_capacity(*rank);
                    let mut rem = pattern_rank;
                    for _ in 0..*rank {
                        pattern.push(rem % 3);
                        rem /= 3;
                    }
                    pattern.reverse();
                    let signs: Vec<&str> =
                        pattern.iter().map(|d| ["-", "0", "+"][*d]).collect();
                    format!("cell atom sign pattern ({}) with F index {f}", signs.join(""))
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PartitionKind {
    /// Label per element index, in enumerate_all (table) order.
    ExplicitFinite { labels: Vec<Label> },
    BuiltinSymbolic(Classifier),
    /// Assignment on the stated ball domain; classify outside is an error.
    BallExplicit { radius: usize, assignment: BTreeMap<GroupElement, Label> },
}

/// A total block-labeling of the group (partial for ball-explicit kinds).
///
/// A post-composition map lets coarsenings and relabelings share the
/// underlying classifier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    m: usize,
    kind: PartitionKind,
    post_map: Vec<Label>,
}

impl Partition {
    /// Explicit partition from a label vector in element-index order.
    /// Every label `1..=m` must occur and no label may exceed `m`.
    pub fn from_labels(engine: &Engine, labels: Vec<Label>, m: usize) -> Result<Self> {
        let order = engine.order().ok_or(Error::InfiniteEngine)?;
        if labels.len() != order {
            return Err(Error::InvalidPartition(format!(
                "label vector length {} does not match group order {order}",
                labels.len()
            )));
        }
        validate_labels(&labels, m)?;
        Ok(Partition {
            m,
            kind: PartitionKind::ExplicitFinite { labels },
            post_map: (1..=m).collect(),
        })
    }

    /// Explicit partition from blocks; block order fixes the labels.
    pub fn from_blocks(engine: &Engine, blocks: &[Vec<GroupElement>]) -> Result<Self> {
        let order = engine.order().ok_or(Error::InfiniteEngine)?;
        let m = blocks.len();
        if m == 0 {
            return Err(Error::InvalidPartition("no blocks given".into()));
        }
        let mut labels = vec![0usize; order];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", b + 1)));
            }
            for el in block {
                engine.check_element(el)?;
                let idx = el.finite_index().expect("finite engine element");
                if labels[idx] != 0 {
                    return Err(Error::InvalidPartition(format!(
                        "element {} appears in two blocks",
                        engine.show(el)
                    )));
                }
                labels[idx] = b + 1;
            }
        }
        if let Some(idx) = labels.iter().position(|&l| l == 0) {
            return Err(Error::InvalidPartition(format!(
                "element {} is not covered by any block",
                engine.show(&engine.element(idx)?)
            )));
        }
        Ok(Partition {
            m,
            kind: PartitionKind::ExplicitFinite { labels },
            post_map: (1..=m).collect(),
        })
    }

    /// Symbolic partition from a builtin classifier.
    pub fn symbolic(classifier: Classifier) -> Self {
        let m = classifier.block_count();
        Partition {
            m,
            kind: PartitionKind::BuiltinSymbolic(classifier),
            post_map: (1..=m).collect(),
        }
    }

    /// The one-block partition; total on every engine.
    pub fn trivial() -> Self {
        Partition::symbolic(Classifier::Trivial)
    }

    /// Partial partition given on the canonical ball of the stated radius.
    pub fn ball_explicit(
        domain: Vec<GroupElement>,
        labels: Vec<Label>,
        m: usize,
        radius: usize,
    ) -> Result<Self> {
        if domain.len() != labels.len() {
            return Err(Error::InvalidPartition(format!(
                "{} domain elements but {} labels",
                domain.len(),
                labels.len()
            )));
        }
        validate_labels(&labels, m)?;
        let assignment: BTreeMap<GroupElement, Label> =
            domain.into_iter().zip(labels).collect();
        Ok(Partition {
            m,
            kind: PartitionKind::BallExplicit { radius, assignment },
            post_map: (1..=m).collect(),
        })
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.m
    }

    /// True when classification is total on the whole group.
    pub fn is_total(&self) -> bool {
        !matches!(self.kind, PartitionKind::BallExplicit { .. })
    }

    pub fn domain_radius(&self) -> Option<usize> {
        match &self.kind {
            PartitionKind::BallExplicit { radius, .. } => Some(*radius),
            _ => None,
        }
    }

    /// Label of an element, in `1..=block_count()`.
    pub fn classify(&self, x: &GroupElement) -> Result<Label> {
        let base = match &self.kind {
            PartitionKind::ExplicitFinite { labels } => {
                let idx = x.finite_index().ok_or_else(|| {
                    Error::EngineMismatch("explicit partition classifying non-finite element".into())
                })?;
                *labels.get(idx).ok_or_else(|| {
                    Error::IndexOutOfRange(format!("element index {idx} in partition"))
                })?
            }
            PartitionKind::BuiltinSymbolic(c) => c.classify(x)?,
            PartitionKind::BallExplicit { assignment, .. } => {
                *assignment.get(x).ok_or_else(|| {
                    Error::ClassificationDomain(format!("{x:?} is outside the stated ball domain"))
                })?
            }
        };
        Ok(self.post_map[base - 1])
    }

    /// Label vector in element-index order; finite explicit partitions only.
    pub fn labels_vec(&self) -> Result<Vec<Label>> {
        match &self.kind {
            PartitionKind::ExplicitFinite { labels } => {
                Ok(labels.iter().map(|&l| self.post_map[l - 1]).collect())
            }
            _ => Err(Error::Invalid("labels_vec requires an explicit finite partition".into())),
        }
    }

    /// Element indices per block, labels `1..=m`; explicit partitions only.
    pub fn blocks(&self) -> Result<Vec<Vec<usize>>> {
        let labels = self.labels_vec()?;
        let mut blocks = vec![Vec::new(); self.m];
        for (idx, &l) in labels.iter().enumerate() {
            blocks[l - 1].push(idx);
        }
        Ok(blocks)
    }

    /// Applies a merge map (surjection onto `1..=r`) on labels, producing the
    /// coarse partition whose blocks are unions of fine blocks.
    pub fn coarsen(&self, map: &BlockMergeMap) -> Result<Partition> {
        if map.fine_count() != self.m {
            return Err(Error::InvalidPartition(format!(
                "merge map has domain {} but the partition has {} blocks",
                map.fine_count(),
                self.m
            )));
        }
        let post_map: Vec<Label> =
            self.post_map.iter().map(|&l| map.image(l)).collect();
        Ok(Partition { m: map.coarse_count(), kind: self.kind.clone(), post_map })
    }

    /// Relabels blocks by a bijection on `1..=m`.
    pub fn relabeled(&self, perm: &[Label]) -> Result<Partition> {
        let map = BlockMergeMap::new(perm.to_vec(), self.m)?;
        if map.coarse_count() != self.m {
            return Err(Error::InvalidPartition("relabeling must be a bijection".into()));
        }
        self.coarsen(&map)
    }

    /// Swaps two block labels; used as a negative control for verifiers.
    pub fn with_label_swap(&self, a: Label, b: Label) -> Result<Partition> {
        if a < 1 || a > self.m || b < 1 || b > self.m {
            return Err(Error::IndexOutOfRange(format!("labels {a}, {b} of {}", self.m)));
        }
        let mut perm: Vec<Label> = (1..=self.m).collect();
        perm.swap(a - 1, b - 1);
        self.relabeled(&perm)
    }

    /// Printable block description.
    pub fn describe_block(&self, label: Label) -> String {
        // invert the post map: find a base label mapping to `label`
        let base = self.post_map.iter().position(|&l| l == label);
        match (&self.kind, base) {
            (PartitionKind::BuiltinSymbolic(c), Some(b)) => c.describe(b + 1),
            _ => format!("block {label}"),
        }
    }

    fn underlying(&self) -> (&PartitionKind, &[Label]) {
        (&self.kind, &self.post_map)
    }
}

fn validate_labels(labels: &[Label], m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidPartition("block count must be positive".into()));
    }
    let mut seen = vec![false; m];
    for &l in labels {
        if l < 1 || l > m {
            return Err(Error::InvalidPartition(format!("label {l} outside 1..={m}")));
        }
        seen[l - 1] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidPartition(format!("block {} is empty", missing + 1)));
    }
    Ok(())
}

/// A surjection from fine labels `1..=s` onto coarse labels `1..=r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMergeMap {
    images: Vec<Label>,
    coarse: usize,
}

impl BlockMergeMap {
    pub fn new(images: Vec<Label>, coarse: usize) -> Result<Self> {
        let mut seen = vec![false; coarse];
        for &l in &images {
            if l < 1 || l > coarse {
                return Err(Error::InvalidPartition(format!(
                    "merge image {l} outside 1..={coarse}"
                )));
            }
            seen[l - 1] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidPartition("merge map is not surjective".into()));
        }
        Ok(BlockMergeMap { images, coarse })
    }

    pub fn identity(m: usize) -> Self {
        BlockMergeMap { images: (1..=m).collect(), coarse: m }
    }

    pub fn fine_count(&self) -> usize {
        self.images.len()
    }

    pub fn coarse_count(&self) -> usize {
        self.coarse
    }

    pub fn image(&self, fine: Label) -> Label {
        self.images[fine - 1]
    }

    pub fn images(&self) -> &[Label] {
        &self.images
    }

    /// `self` after `other`: applies `other` first.
    pub fn compose_after(&self, other: &BlockMergeMap) -> Result<BlockMergeMap> {
        if other.coarse_count() != self.fine_count() {
            return Err(Error::InvalidPartition("merge maps do not compose".into()));
        }
        let images = other.images.iter().map(|&l| self.image(l)).collect();
        BlockMergeMap::new(images, self.coarse)
    }
}

/// If `fine` refines `coarse`, the unique merge map sending each fine block
/// to the coarse block containing it; `None` when blocks cross.
///
/// Symbolic partitions are supported against the trivial partition and
/// against partitions sharing their underlying classifier.
pub fn is_refinement(fine: &Partition, coarse: &Partition) -> Result<Option<BlockMergeMap>> {
    if coarse.m == 1 {
        return Ok(Some(BlockMergeMap::new(vec![1; fine.m], 1)?));
    }
    let (fine_kind, fine_post) = fine.underlying();
    let (coarse_kind, coarse_post) = coarse.underlying();
    let pairs: Vec<(Label, Label)> = match (fine_kind, coarse_kind) {
        (
            PartitionKind::ExplicitFinite { labels: lf },
            PartitionKind::ExplicitFinite { labels: lc },
        ) => {
            if lf.len() != lc.len() {
                return Err(Error::Invalid("partitions carry different groups".into()));
            }
            lf.iter()
                .zip(lc.iter())
                .map(|(&bf, &bc)| (fine_post[bf - 1], coarse_post[bc - 1]))
                .collect()
        }
        (PartitionKind::BuiltinSymbolic(cf), PartitionKind::BuiltinSymbolic(cc)) if cf == cc => {
            (1..=cf.block_count())
                .map(|b| (fine_post[b - 1], coarse_post[b - 1]))
                .collect()
        }
        (
            PartitionKind::BallExplicit { assignment: af, .. },
            PartitionKind::BallExplicit { assignment: ac, .. },
        ) => {
            if af.len() != ac.len() || !af.keys().eq(ac.keys()) {
                return Err(Error::Invalid("ball partitions carry different domains".into()));
            }
            af.values()
                .zip(ac.values())
                .map(|(&bf, &bc)| (fine_post[bf - 1], coarse_post[bc - 1]))
                .collect()
        }
        _ => {
            return Err(Error::Invalid(
                "refinement between these partition kinds is not supported".into(),
            ))
        }
    };
    let mut images = vec![0usize; fine.m];
    for (lf, lc) in pairs {
        if images[lf - 1] == 0 {
            images[lf - 1] = lc;
        } else if images[lf - 1] != lc {
            return Ok(None);
        }
    }
    debug_assert!(images.iter().all(|&l| l != 0), "fine blocks are nonempty");
    Ok(Some(BlockMergeMap::new(images, coarse.m)?))
}

/// The similarity relation on refinements: both sides must refine, and the
/// two merge maps must agree as label functions.
pub fn is_similar(
    fine_g: &Partition,
    coarse_g: &Partition,
    fine_h: &Partition,
    coarse_h: &Partition,
) -> Result<bool> {
    let map_g = is_refinement(fine_g, coarse_g)?
        .ok_or_else(|| Error::Invalid("left side is not a refinement".into()))?;
    let map_h = is_refinement(fine_h, coarse_h)?
        .ok_or_else(|| Error::Invalid("right side is not a refinement".into()))?;
    Ok(map_g == map_h)
}

/// A finite sigma-algebra over a finite engine, encoded as its atom partition
/// plus free member generation over atom-index subsets.
#[derive(Clone, Debug)]
pub struct SigmaAlgebra {
    atoms: Partition,
    atom_elements: Vec<Vec<usize>>,
}

/// A member of a finite sigma-algebra: a subset of atom indices (bit `i`
/// stands for the atom with label `i + 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MemberSet(pub u64);

impl SigmaAlgebra {
    fn from_atom_partition(atoms: Partition) -> Result<Self> {
        if atoms.block_count() > 64 {
            return Err(Error::Invalid("sigma-algebras support at most 64 atoms".into()));
        }
        let atom_elements = atoms.blocks()?;
        Ok(SigmaAlgebra { atoms, atom_elements })
    }

    /// Sigma-algebra whose atoms are the blocks of an explicit partition.
    pub fn from_partition(partition: &Partition) -> Result<Self> {
        Self::from_atom_partition(partition.clone())
    }

    /// The atom partition; every member is a union of its blocks.
    pub fn atoms(&self) -> &Partition {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.block_count()
    }

    /// All members, from the empty set to the whole group.
    pub fn members(&self) -> impl Iterator<Item = MemberSet> {
        (0u64..(1u64 << self.atom_count())).map(MemberSet)
    }

    pub fn complement(&self, member: MemberSet) -> MemberSet {
        MemberSet(!member.0 & ((1u64 << self.atom_count()) - 1))
    }

    pub fn union(&self, a: MemberSet, b: MemberSet) -> MemberSet {
        MemberSet(a.0 | b.0)
    }

    /// Element indices of a member, sorted.
    pub fn member_elements(&self, member: MemberSet) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, atom) in self.atom_elements.iter().enumerate() {
            if member.0 >> i & 1 == 1 {
                out.extend_from_slice(atom);
            }
        }
        out.sort_unstable();
        out
    }
}

/// The finite sigma-algebra generated by a collection of element subsets:
/// atoms are the nonempty cells of the common refinement of the sets and
/// their complements. An empty collection yields the trivial algebra.
pub fn generated_sigma_algebra(
    sets: &[Vec<GroupElement>],
    engine: &Engine,
) -> Result<SigmaAlgebra> {
    let order = engine.order().ok_or(Error::InfiniteEngine)?;
    let mut membership = vec![vec![false; sets.len()]; order];
    for (s, set) in sets.iter().enumerate() {
        for el in set {
            engine.check_element(el)?;
            membership[el.finite_index().expect("finite element")][s] = true;
        }
    }
    // group elements by signature, first-occurrence order
    let mut signature_labels: BTreeMap<Vec<bool>, Label> = BTreeMap::new();
    let mut labels = vec![0usize; order];
    let mut next = 1usize;
    for idx in 0..order {
        let sig = membership[idx].clone();
        let label = *signature_labels.entry(sig).or_insert_with(|| {
            let l = next;
            next += 1;
            l
        });
        labels[idx] = label;
    }
    let atoms = Partition::from_labels(engine, labels, next - 1)?;
    SigmaAlgebra::from_atom_partition(atoms)
}
