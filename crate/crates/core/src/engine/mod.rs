//! Uniform group abstraction: finite table/permutation groups plus curated
//! infinite engines (free groups, free abelian groups, `Z^n x F`, the infinite
//! dihedral group), all with canonical element normal forms.

mod ball;
mod derived;
mod element;
mod finite;

pub use ball::{ball, ball_layers};
pub use derived::{center, derived_series, inn_order, DerivedSeriesReport};
pub use element::{DihedralLetter, GroupElement, Payload};
pub use finite::{
    alternating4, cyclic, dihedral, quaternion, symmetric3, FiniteGroup,
    ASSOCIATIVITY_CHECK_LIMIT,
};

use std::fmt::Write as _;
use std::sync::Arc;

use crate::{Error, Result};

/// A group together with the data needed to multiply, invert and (for finite
/// engines) enumerate its elements. Cheap to clone.
#[derive(Clone, Debug)]
pub enum Engine {
    Finite(Arc<FiniteGroup>),
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Product { rank: usize, finite: Arc<FiniteGroup> },
    DihedralInfinite,
}

impl PartialEq for Engine {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Engine::Finite(a), Engine::Finite(b)) => Arc::ptr_eq(a, b) || a == b,
            (Engine::Free { rank: a }, Engine::Free { rank: b }) => a == b,
            (Engine::FreeAbelian { rank: a }, Engine::FreeAbelian { rank: b }) => a == b,
            (
                Engine::Product { rank: r1, finite: f1 },
                Engine::Product { rank: r2, finite: f2 },
            ) => r1 == r2 && (Arc::ptr_eq(f1, f2) || f1 == f2),
            (Engine::DihedralInfinite, Engine::DihedralInfinite) => true,
            _ => false,
        }
    }
}

impl Eq for Engine {}

impl Engine {
    pub fn finite(group: FiniteGroup) -> Self {
        Engine::Finite(Arc::new(group))
    }

    pub fn free(rank: usize) -> Self {
        assert!(rank >= 1, "free rank must be positive");
        Engine::Free { rank }
    }

    pub fn free_abelian(rank: usize) -> Self {
        assert!(rank >= 1, "free-abelian rank must be positive");
        Engine::FreeAbelian { rank }
    }

    pub fn product_zn_f(rank: usize, finite: FiniteGroup) -> Self {
        assert!(rank >= 1, "product rank must be positive");
        Engine::Product { rank, finite: Arc::new(finite) }
    }

    pub fn dihedral_infinite() -> Self {
        Engine::DihedralInfinite
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Engine::Finite(_))
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Engine::Finite(g) => Some(g.order()),
            _ => None,
        }
    }

    pub fn finite_group(&self) -> Option<&FiniteGroup> {
        match self {
            Engine::Finite(g) => Some(g),
            _ => None,
        }
    }

    pub fn identity(&self) -> GroupElement {
        let payload = match self {
            Engine::Finite(g) => Payload::Finite(g.identity_index()),
            Engine::Free { .. } => Payload::Free(Vec::new()),
            Engine::FreeAbelian { rank } => Payload::FreeAbelian(vec![0; *rank]),
            Engine::Product { rank, finite } => Payload::Product {
                vector: vec![0; *rank],
                finite: finite.identity_index(),
            },
            Engine::DihedralInfinite => Payload::Dihedral(Vec::new()),
        };
        GroupElement(payload)
    }

    /// Checks that an element's payload belongs to this engine.
    pub fn check_element(&self, el: &GroupElement) -> Result<()> {
        let ok = match (self, el.payload()) {
            (Engine::Finite(g), Payload::Finite(i)) => *i < g.order(),
            (Engine::Free { rank }, Payload::Free(w)) => {
                w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= *rank)
            }
            (Engine::FreeAbelian { rank }, Payload::FreeAbelian(v)) => v.len() == *rank,
            (Engine::Product { rank, finite }, Payload::Product { vector, finite: f }) => {
                vector.len() == *rank && *f < finite.order()
            }
            (Engine::DihedralInfinite, Payload::Dihedral(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::EngineMismatch(format!(
                "element {:?} does not belong to this engine",
                el.payload()
            )))
        }
    }

    /// Canonical product `a * b`.
    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        self.check_element(b)?;
        let payload = match (self, a.payload(), b.payload()) {
            (Engine::Finite(g), Payload::Finite(i), Payload::Finite(j)) => {
                Payload::Finite(g.mul(*i, *j))
            }
            (Engine::Free { .. }, Payload::Free(u), Payload::Free(v)) => {
                let mut word = u.clone();
                for &l in v {
                    if word.last() == Some(&-l) {
                        word.pop();
                    } else {
                        word.push(l);
                    }
                }
                Payload::Free(word)
            }
            (Engine::FreeAbelian { .. }, Payload::FreeAbelian(u), Payload::FreeAbelian(v)) => {
                Payload::FreeAbelian(u.iter().zip(v).map(|(x, y)| x + y).collect())
            }
            (
                Engine::Product { finite, .. },
                Payload::Product { vector: v1, finite: f1 },
                Payload::Product { vector: v2, finite: f2 },
            ) => Payload::Product {
                vector: v1.iter().zip(v2).map(|(x, y)| x + y).collect(),
                finite: finite.mul(*f1, *f2),
            },
            (Engine::DihedralInfinite, Payload::Dihedral(u), Payload::Dihedral(v)) => {
                let mut word = u.clone();
                for &l in v {
                    if word.last() == Some(&l) {
                        word.pop();
                    } else {
                        word.push(l);
                    }
                }
                Payload::Dihedral(word)
            }
            _ => unreachable!("check_element admits matching payloads only"),
        };
        Ok(GroupElement(payload))
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_element(a)?;
        let payload = match (self, a.payload()) {
            (Engine::Finite(g), Payload::Finite(i)) => Payload::Finite(g.inverse(*i)),
            (Engine::Free { .. }, Payload::Free(w)) => {
                Payload::Free(w.iter().rev().map(|&l| -l).collect())
            }
            (Engine::FreeAbelian { .. }, Payload::FreeAbelian(v)) => {
                Payload::FreeAbelian(v.iter().map(|x| -x).collect())
            }
            (Engine::Product { finite, .. }, Payload::Product { vector, finite: f }) => {
                Payload::Product {
                    vector: vector.iter().map(|x| -x).collect(),
                    finite: finite.inverse(*f),
                }
            }
            (Engine::DihedralInfinite, Payload::Dihedral(w)) => {
                // letters are involutions, so inversion just reverses
                Payload::Dihedral(w.iter().rev().copied().collect())
            }
            _ => unreachable!(),
        };
        Ok(GroupElement(payload))
    }

    /// All elements of a finite engine exactly once, in table order.
    pub fn enumerate_all(&self) -> Result<Vec<GroupElement>> {
        match self {
            Engine::Finite(g) => {
                Ok((0..g.order()).map(|i| GroupElement(Payload::Finite(i))).collect())
            }
            _ => Err(Error::InfiniteEngine),
        }
    }

    /// Element of a finite engine by table index.
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        match self {
            Engine::Finite(g) if index < g.order() => Ok(GroupElement(Payload::Finite(index))),
            Engine::Finite(_) => Err(Error::IndexOutOfRange(format!("element index {index}"))),
            _ => Err(Error::InfiniteEngine),
        }
    }

    /// Element of a finite engine by name.
    pub fn element_by_name(&self, name: &str) -> Result<GroupElement> {
        match self {
            Engine::Finite(g) => g
                .index_of_name(name)
                .map(|i| GroupElement(Payload::Finite(i)))
                .ok_or_else(|| Error::Invalid(format!("unknown element name {name:?}"))),
            _ => Err(Error::InfiniteEngine),
        }
    }

    /// Free-engine letter `f_index^sign` (1-based index).
    pub fn free_letter(&self, index: usize, sign: i8) -> Result<GroupElement> {
        match self {
            Engine::Free { rank } if index >= 1 && index <= *rank => {
                let l = index as i32 * if sign >= 0 { 1 } else { -1 };
                Ok(GroupElement(Payload::Free(vec![l])))
            }
            Engine::Free { .. } => Err(Error::IndexOutOfRange(format!("free letter {index}"))),
            _ => Err(Error::EngineMismatch("free_letter on non-free engine".into())),
        }
    }

    /// Printable form of an element; finite engines use their element names.
    pub fn show(&self, el: &GroupElement) -> String {
        match (self, el.payload()) {
            (Engine::Finite(g), Payload::Finite(i)) => g.name(*i).to_string(),
            (Engine::Free { .. }, Payload::Free(w)) => {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    let mut out = String::new();
                    for (k, &l) in w.iter().enumerate() {
                        if k > 0 {
                            out.push(' ');
                        }
                        if l > 0 {
                            let _ = write!(out, "f{l}");
                        } else {
                            let _ = write!(out, "f{}^-1", -l);
                        }
                    }
                    out
                }
            }
            (Engine::FreeAbelian { .. }, Payload::FreeAbelian(v)) => {
                format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
            }
            (Engine::Product { finite, .. }, Payload::Product { vector, finite: f }) => {
                format!(
                    "(({}), {})",
                    vector.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
                    finite.name(*f)
                )
            }
            (Engine::DihedralInfinite, Payload::Dihedral(w)) => {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    w.iter().map(|l| l.as_char()).collect()
                }
            }
            _ => format!("{:?}", el.payload()),
        }
    }

    /// The curated generating tuple of this engine: table generators are not
    /// canonical for finite engines, so this is defined for infinite engines
    /// and for finite engines falls back to all non-identity elements.
    pub fn standard_generators(&self) -> GeneratingTuple {
        match self {
            Engine::Finite(g) => {
                let elements = (0..g.order())
                    .filter(|&i| i != g.identity_index())
                    .map(|i| GroupElement(Payload::Finite(i)))
                    .collect::<Vec<_>>();
                let elements = if elements.is_empty() {
                    vec![self.identity()]
                } else {
                    elements
                };
                GeneratingTuple { engine: self.clone(), elements }
            }
            Engine::Free { rank } => GeneratingTuple {
                engine: self.clone(),
                elements: (1..=*rank).map(|i| GroupElement(Payload::Free(vec![i as i32]))).collect(),
            },
            Engine::FreeAbelian { rank } => GeneratingTuple {
                engine: self.clone(),
                elements: (0..*rank)
                    .map(|i| {
                        let mut v = vec![0i64; *rank];
                        v[i] = 1;
                        GroupElement(Payload::FreeAbelian(v))
                    })
                    .collect(),
            },
            Engine::Product { rank, finite } => {
                // (e_i, e_F) for i = 1..n, then (0, x_j) over non-identity x_j
                let mut elements = Vec::new();
                for i in 0..*rank {
                    let mut v = vec![0i64; *rank];
                    v[i] = 1;
                    elements.push(GroupElement(Payload::Product {
                        vector: v,
                        finite: finite.identity_index(),
                    }));
                }
                for j in 0..finite.order() {
                    if j != finite.identity_index() {
                        elements.push(GroupElement(Payload::Product {
                            vector: vec![0i64; *rank],
                            finite: j,
                        }));
                    }
                }
                GeneratingTuple { engine: self.clone(), elements }
            }
            Engine::DihedralInfinite => GeneratingTuple {
                engine: self.clone(),
                elements: vec![
                    GroupElement(Payload::Dihedral(vec![DihedralLetter::X])),
                    GroupElement(Payload::Dihedral(vec![DihedralLetter::Y])),
                ],
            },
        }
    }

    /// Builds a verified ordered generating tuple.
    ///
    /// Finite engines verify generation by breadth-first closure. Infinite
    /// engines accept a tuple only when every standard generator occurs among
    /// the components or their inverses, the decidable criterion that
    /// guarantees generation; anything else is rejected rather than trusted.
    pub fn generating_tuple(&self, elements: Vec<GroupElement>) -> Result<GeneratingTuple> {
        if elements.is_empty() {
            return Err(Error::NotGenerating("empty tuple".into()));
        }
        for el in &elements {
            self.check_element(el)?;
        }
        match self {
            Engine::Finite(g) => {
                let seeds: Vec<usize> =
                    elements.iter().map(|e| e.finite_index().unwrap()).collect();
                let closure = g.closure(&seeds);
                if closure.len() != g.order() {
                    return Err(Error::NotGenerating(format!(
                        "closure has {} of {} elements",
                        closure.len(),
                        g.order()
                    )));
                }
            }
            _ => {
                let standard = self.standard_generators();
                let mut pool: Vec<GroupElement> = Vec::new();
                for el in &elements {
                    pool.push(el.clone());
                    pool.push(self.invert(el)?);
                }
                for s in standard.elements() {
                    if !pool.contains(s) {
                        return Err(Error::UnverifiableGeneration(format!(
                            "standard generator {} is not a component or inverse of one",
                            self.show(s)
                        )));
                    }
                }
            }
        }
        Ok(GeneratingTuple { engine: self.clone(), elements })
    }
}

/// An ordered generating tuple `(g_1, ..., g_n)`; repeats are permitted and
/// construction verifies generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingTuple {
    engine: Engine,
    elements: Vec<GroupElement>,
}

impl GeneratingTuple {
    /// For call sites that have already established generation themselves.
    pub(crate) fn new_verified(engine: Engine, elements: Vec<GroupElement>) -> Self {
        GeneratingTuple { engine, elements }
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// 1-based component access.
    pub fn component(&self, index: usize) -> Result<&GroupElement> {
        self.elements
            .get(index.checked_sub(1).ok_or_else(|| {
                Error::IndexOutOfRange("generator index 0 (indices are 1-based)".into())
            })?)
            .ok_or_else(|| Error::IndexOutOfRange(format!("generator index {index}")))
    }

    pub fn show(&self) -> String {
        let parts: Vec<String> = self.elements.iter().map(|e| self.engine.show(e)).collect();
        format!("({})", parts.join(", "))
    }
}
