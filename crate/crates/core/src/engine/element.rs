use std::cmp::Ordering;

/// Letter of the infinite dihedral group `<x, y | x^2 = y^2 = 1>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DihedralLetter {
    X,
    Y,
}

impl DihedralLetter {
    pub fn as_char(self) -> char {
        match self {
            DihedralLetter::X => 'x',
            DihedralLetter::Y => 'y',
        }
    }
}

/// Engine-tagged canonical payload of a group element.
///
/// Free and dihedral words are stored fully reduced; two elements of one
/// engine are equal iff their payloads are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// Index into the element list of a finite group table.
    Finite(usize),
    /// Reduced word over signed letters `±1..±n`.
    Free(Vec<i32>),
    /// Integer exponent vector of length n.
    FreeAbelian(Vec<i64>),
    /// Element of `Z^n x F`: vector part plus finite-component index.
    Product { vector: Vec<i64>, finite: usize },
    /// Reduced alternating word over {x, y}; empty means the identity.
    Dihedral(Vec<DihedralLetter>),
}

impl Payload {
    fn rank(&self) -> u8 {
        match self {
            Payload::Finite(_) => 0,
            Payload::Free(_) => 1,
            Payload::FreeAbelian(_) => 2,
            Payload::Product { .. } => 3,
            Payload::Dihedral(_) => 4,
        }
    }
}

/// A group element in the canonical normal form of its engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement(pub(crate) Payload);

impl GroupElement {
    pub(crate) fn payload(&self) -> &Payload {
        &self.0
    }

    /// Index of a finite-engine element, if this is one.
    pub fn finite_index(&self) -> Option<usize> {
        match &self.0 {
            Payload::Finite(i) => Some(*i),
            _ => None,
        }
    }

    /// Reduced signed-letter word of a free-engine element, if this is one.
    pub fn free_word(&self) -> Option<&[i32]> {
        match &self.0 {
            Payload::Free(w) => Some(w),
            _ => None,
        }
    }

    /// Exponent vector of a free-abelian element, if this is one.
    pub fn abelian_vector(&self) -> Option<&[i64]> {
        match &self.0 {
            Payload::FreeAbelian(v) => Some(v),
            _ => None,
        }
    }

    /// Vector and finite part of a product-engine element, if this is one.
    pub fn product_parts(&self) -> Option<(&[i64], usize)> {
        match &self.0 {
            Payload::Product { vector, finite } => Some((vector, *finite)),
            _ => None,
        }
    }

    /// Alternating {x,y} word of a dihedral element, if this is one.
    pub fn dihedral_word(&self) -> Option<&[DihedralLetter]> {
        match &self.0 {
            Payload::Dihedral(w) => Some(w),
            _ => None,
        }
    }
}

// Canonical element order: table order for finite engines, shortlex for word
// engines, lexicographic for vectors. This order is the contract for
// ball-explicit partition files.
impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        use Payload::*;
        match (&self.0, &other.0) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Free(a), Free(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (FreeAbelian(a), FreeAbelian(b)) => a.cmp(b),
            (
                Product { vector: v1, finite: f1 },
                Product { vector: v2, finite: f2 },
            ) => v1.cmp(v2).then_with(|| f1.cmp(f2)),
            (Dihedral(a), Dihedral(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (a, b) => a.rank().cmp(&b.rank()),
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
