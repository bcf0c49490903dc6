//! Representative pairs `(J, ρ)`: symbolic words over an ambient generator
//! count, evaluated against any generating tuple of the same arity.

use std::collections::HashSet;
use std::fmt;

use crate::engine::{Engine, GeneratingTuple, GroupElement};
use crate::{Error, Result};

/// A symbolic word: index tuple `J` (1-based entries in `1..=arity`) and sign
/// tuple `ρ` of the same length. Evaluating against a tuple `g` yields
/// `∏ g_{J(i)}^{ρ(i)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepPair {
    arity: usize,
    indices: Vec<usize>,
    signs: Vec<i8>,
}

impl RepPair {
    pub fn new(arity: usize, letters: &[(usize, i8)]) -> Result<Self> {
        if arity == 0 {
            return Err(Error::Invalid("ambient generator count must be positive".into()));
        }
        let mut indices = Vec::with_capacity(letters.len());
        let mut signs = Vec::with_capacity(letters.len());
        for &(idx, sign) in letters {
            if idx < 1 || idx > arity {
                return Err(Error::IndexOutOfRange(format!(
                    "letter index {idx} outside 1..={arity}"
                )));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::Invalid(format!("sign {sign} must be +1 or -1")));
            }
            indices.push(idx);
            signs.push(sign);
        }
        Ok(RepPair { arity, indices, signs })
    }

    pub fn empty(arity: usize) -> Self {
        RepPair { arity, indices: Vec::new(), signs: Vec::new() }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Letters as `(index, sign)` in word order.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i8)> + '_ {
        self.indices.iter().copied().zip(self.signs.iter().copied())
    }

    /// Evaluates the word against arbitrary substituted elements; the list
    /// length must cover every letter index.
    pub fn evaluate_on(&self, engine: &Engine, elements: &[GroupElement]) -> Result<GroupElement> {
        let mut acc = engine.identity();
        for (idx, sign) in self.letters() {
            let base = elements.get(idx - 1).ok_or_else(|| {
                Error::IndexOutOfRange(format!(
                    "letter index {idx} exceeds {} substituted elements",
                    elements.len()
                ))
            })?;
            let factor =
                if sign > 0 { base.clone() } else { engine.invert(base)? };
            acc = engine.multiply(&acc, &factor)?;
        }
        Ok(acc)
    }

    /// Evaluates `W(J, ρ; g)` against a generating tuple of matching arity.
    pub fn evaluate(&self, gens: &GeneratingTuple) -> Result<GroupElement> {
        if self.arity != gens.len() {
            return Err(Error::ArityMismatch(format!(
                "pair over {} generators evaluated against tuple of length {}",
                self.arity,
                gens.len()
            )));
        }
        self.evaluate_on(gens.engine(), gens.elements())
    }

    /// Component-wise concatenation `(J1 ⊕ J2, ρ1 ⊕ ρ2)`.
    pub fn concat(&self, other: &RepPair) -> Result<RepPair> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(format!(
                "concat over ambient counts {} and {}",
                self.arity, other.arity
            )));
        }
        let mut indices = self.indices.clone();
        indices.extend_from_slice(&other.indices);
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Ok(RepPair { arity: self.arity, indices, signs })
    }

    /// `(J^-1, ρ^-1)`: reversed indices, reversed and negated signs.
    pub fn inverse(&self) -> RepPair {
        RepPair {
            arity: self.arity,
            indices: self.indices.iter().rev().copied().collect(),
            signs: self.signs.iter().rev().map(|s| -s).collect(),
        }
    }

    /// `([J, I], [ρ, δ]) = (J^-1 ⊕ I^-1 ⊕ J ⊕ I, ...)`, whose evaluation is
    /// the commutator of the operands' evaluations.
    pub fn commutator(&self, other: &RepPair) -> Result<RepPair> {
        self.inverse().concat(&other.inverse())?.concat(self)?.concat(other)
    }

    /// True iff no adjacent positions carry the same index with opposite signs.
    pub fn is_reduced(&self) -> bool {
        self.letters().zip(self.letters().skip(1)).all(|((i1, s1), (i2, s2))| {
            i1 != i2 || s1 == s2
        })
    }

    /// Cancels adjacent inverse letters until reduced; evaluation in the free
    /// engine is unchanged.
    pub fn free_reduce(&self) -> RepPair {
        let mut stack: Vec<(usize, i8)> = Vec::with_capacity(self.len());
        for (idx, sign) in self.letters() {
            if stack.last() == Some(&(idx, -sign)) {
                stack.pop();
            } else {
                stack.push((idx, sign));
            }
        }
        let (indices, signs) = stack.into_iter().unzip();
        RepPair { arity: self.arity, indices, signs }
    }

    /// Per-generator exponent sums `Σ {ρ(t) : J(t) = i}`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.arity];
        for (idx, sign) in self.letters() {
            sums[idx - 1] += sign as i64;
        }
        sums
    }

    /// First-derivation-form test: the free evaluation lies in the commutator
    /// subgroup iff every exponent sum vanishes.
    pub fn is_first_derivation_form(&self) -> bool {
        self.exponent_sums().iter().all(|&s| s == 0)
    }

    /// Parses the signed-index text form, e.g. `"+1 -2 +1"`. Signs are
    /// mandatory so that parsing and printing are mutually inverse.
    pub fn parse(text: &str, arity: usize) -> Result<RepPair> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (sign, digits) = match token.as_bytes().first() {
                Some(b'+') => (1i8, &token[1..]),
                Some(b'-') => (-1i8, &token[1..]),
                _ => {
                    return Err(Error::Parse(format!(
                        "letter {token:?} must start with an explicit sign"
                    )))
                }
            };
            let idx: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter index in {token:?}")))?;
            letters.push((idx, sign));
        }
        RepPair::new(arity, &letters)
    }
}

impl fmt::Display for RepPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (idx, sign) in self.letters() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}{idx}", if sign > 0 { '+' } else { '-' })?;
            first = false;
        }
        Ok(())
    }
}

/// Signed letters in enumeration order `+1 < ... < +n < -1 < ... < -n`.
fn letter_of_rank(rank: usize, n: usize) -> (usize, i8) {
    if rank < n {
        (rank + 1, 1)
    } else {
        (rank - n + 1, -1)
    }
}

/// All pairs of exactly the given length, in lexicographic order over the
/// signed-letter alphabet.
fn pairs_of_length(n: usize, len: usize) -> Vec<RepPair> {
    let alphabet = 2 * n;
    let total = alphabet.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut letters = vec![(0usize, 0i8); len];
        let mut rem = code;
        for slot in (0..len).rev() {
            letters[slot] = letter_of_rank(rem % alphabet, n);
            rem /= alphabet;
        }
        out.push(RepPair::new(n, &letters).expect("generated letters are in range"));
    }
    out
}

/// All nonempty pairs with `1 <= |J| <= max_len`, ordered by length and then
/// lexicographically over the signed-letter alphabet. This order is the
/// contract behind every "lexicographically first witness" in the crate.
pub fn all_pairs(n: usize, max_len: usize) -> impl Iterator<Item = RepPair> {
    (1..=max_len).flat_map(move |len| pairs_of_length(n, len))
}

/// The reduced pairs among [`all_pairs`], same order.
pub fn reduced_pairs(n: usize, max_len: usize) -> impl Iterator<Item = RepPair> {
    all_pairs(n, max_len).filter(|p| p.is_reduced())
}

/// Number of nonempty pairs with `|J| <= max_len`: `Σ_{p=1..L} (2n)^p`.
pub fn pair_count(n: usize, max_len: usize) -> u128 {
    let alphabet = (2 * n) as u128;
    let mut total = 0u128;
    let mut power = 1u128;
    for _ in 1..=max_len {
        power = power.saturating_mul(alphabet);
        total = total.saturating_add(power);
    }
    total
}

/// Stream items of the depth-`level` derivation-form enumeration whose word
/// length is at most `max_len`, in stream order. Level 0 is the base pair
/// enumeration; level j emits commutators of distinct level-(j-1) items,
/// ordered by result length, then both constituent stream positions. The
/// order does not depend on `max_len`, so prefixes are stable.
fn level_items(n: usize, level: usize, max_len: usize) -> Vec<RepPair> {
    if level == 0 {
        return all_pairs(n, max_len).collect();
    }
    let lower = level_items(n, level - 1, max_len / 2);
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for i1 in 0..lower.len() {
        for i2 in 0..lower.len() {
            if i1 == i2 {
                continue;
            }
            let result_len = 2 * (lower[i1].len() + lower[i2].len());
            if result_len <= max_len {
                candidates.push((result_len, i1, i2));
            }
        }
    }
    candidates.sort_unstable();
    let mut seen: HashSet<RepPair> = HashSet::new();
    let mut out = Vec::new();
    for (_, i1, i2) in candidates {
        let pair = lower[i1].commutator(&lower[i2]).expect("equal ambient counts");
        if seen.insert(pair.clone()) {
            out.push(pair);
        }
    }
    out
}

/// Emits up to `budget` distinct pairs in kth derivation form, built as
/// depth-k nested commutators; deterministic and prefix-stable, so a longer
/// stream extends a shorter one.
pub fn derivation_form_pairs(n: usize, k: usize, budget: usize) -> Result<Vec<RepPair>> {
    if n == 0 || k == 0 || budget == 0 {
        return Err(Error::Invalid("n, k and budget must all be positive".into()));
    }
    let mut max_len = 4usize.pow(k as u32);
    loop {
        let mut items = level_items(n, k, max_len);
        if items.len() >= budget {
            items.truncate(budget);
            return Ok(items);
        }
        if max_len >= 1 << 16 {
            return Ok(items);
        }
        max_len *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{cyclic, symmetric3};

    fn pair(n: usize, letters: &[(usize, i8)]) -> RepPair {
        RepPair::new(n, letters).unwrap()
    }

    #[test]
    fn evaluate_unfolds_the_product() {
        let f2 = Engine::free(2);
        let gens = f2.standard_generators();
        let p = pair(2, &[(1, 1), (2, -1)]);
        assert_eq!(p.evaluate(&gens).unwrap().free_word().unwrap(), &[1, -2]);
        assert_eq!(RepPair::empty(2).evaluate(&gens).unwrap(), f2.identity());
    }

    #[test]
    fn evaluate_in_z4_wraps() {
        let z4 = Engine::finite(cyclic(4));
        let gens = z4.generating_tuple(vec![z4.element(1).unwrap()]).unwrap();
        let p = pair(1, &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        assert_eq!(p.evaluate(&gens).unwrap(), z4.element(0).unwrap());
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let z4 = Engine::finite(cyclic(4));
        let gens = z4.generating_tuple(vec![z4.element(1).unwrap()]).unwrap();
        let p = pair(2, &[(2, 1)]);
        assert!(matches!(p.evaluate(&gens), Err(Error::ArityMismatch(_))));
        assert!(matches!(p.concat(&pair(3, &[(1, 1)])), Err(Error::ArityMismatch(_))));
    }

    #[test]
    fn letter_indices_are_validated() {
        assert!(matches!(RepPair::new(2, &[(3, 1)]), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(RepPair::new(2, &[(0, 1)]), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn concat_appends_componentwise() {
        let p1 = pair(2, &[(1, 1)]);
        let p2 = pair(2, &[(2, -1)]);
        let cat = p1.concat(&p2).unwrap();
        assert_eq!(cat.indices(), &[1, 2]);
        assert_eq!(cat.signs(), &[1, -1]);
        assert_eq!(p1.concat(&RepPair::empty(2)).unwrap(), p1);
    }

    #[test]
    fn inverse_reverses_and_negates() {
        let p = pair(2, &[(1, 1), (2, 1)]);
        let inv = p.inverse();
        assert_eq!(inv.indices(), &[2, 1]);
        assert_eq!(inv.signs(), &[-1, -1]);
        assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn commutator_layout_matches_definition() {
        let p = pair(2, &[(1, 1)]);
        let q = pair(2, &[(2, 1)]);
        let c = p.commutator(&q).unwrap();
        assert_eq!(c.indices(), &[1, 2, 1, 2]);
        assert_eq!(c.signs(), &[-1, -1, 1, 1]);
    }

    #[test]
    fn commutators_vanish_in_abelian_engines() {
        let z5 = Engine::free_abelian(5);
        let gens = z5.standard_generators();
        for p in all_pairs(5, 2).take(40) {
            for q in all_pairs(5, 2).take(10) {
                let c = p.commutator(&q).unwrap();
                assert_eq!(c.evaluate(&gens).unwrap(), z5.identity());
            }
        }
    }

    #[test]
    fn commutator_in_s3_matches_table_oracle() {
        let s3 = Engine::finite(symmetric3());
        let t01 = s3.element_by_name("(0 1)").unwrap();
        let t02 = s3.element_by_name("(0 2)").unwrap();
        let gens = s3.generating_tuple(vec![t01.clone(), t02.clone()]).unwrap();
        let c = pair(2, &[(1, 1)]).commutator(&pair(2, &[(2, 1)])).unwrap();
        // direct multiplication in the table
        let expect = s3
            .multiply(
                &s3.multiply(&s3.invert(&t01).unwrap(), &s3.invert(&t02).unwrap()).unwrap(),
                &s3.multiply(&t01, &t02).unwrap(),
            )
            .unwrap();
        assert_eq!(c.evaluate(&gens).unwrap(), expect);
        // the commutator of two distinct transpositions is a 3-cycle
        assert_ne!(expect, s3.identity());
        let cube = s3
            .multiply(&s3.multiply(&expect, &expect).unwrap(), &expect)
            .unwrap();
        assert_eq!(cube, s3.identity());
    }

    #[test]
    fn reducedness_follows_the_adjacency_rule() {
        assert!(!pair(2, &[(1, 1), (1, -1)]).is_reduced());
        assert!(pair(2, &[(1, 1), (1, 1)]).is_reduced());
        assert!(pair(2, &[(1, 1), (2, 1), (1, -1)]).is_reduced());
        assert!(RepPair::empty(2).is_reduced());
    }

    #[test]
    fn free_reduce_cancels_with_cascade() {
        assert!(pair(2, &[(1, 1), (1, -1)]).free_reduce().is_empty());
        let already = pair(2, &[(1, 1), (2, 1)]);
        assert_eq!(already.free_reduce(), already);
        let p = pair(2, &[(2, 1), (1, 1), (1, -1), (2, 1)]);
        let r = p.free_reduce();
        assert_eq!(r.indices(), &[2, 2]);
        assert_eq!(r.signs(), &[1, 1]);
        // free-engine evaluation is unchanged
        let f2 = Engine::free(2);
        let gens = f2.standard_generators();
        assert_eq!(p.evaluate(&gens).unwrap(), r.evaluate(&gens).unwrap());
    }

    #[test]
    fn parse_and_print_are_inverse() {
        let p = RepPair::parse("+1 -2 +1", 2).unwrap();
        assert_eq!(p.indices(), &[1, 2, 1]);
        assert_eq!(p.signs(), &[1, -1, 1]);
        assert_eq!(p.to_string(), "+1 -2 +1");
        assert_eq!(RepPair::parse("", 2).unwrap(), RepPair::empty(2));
        assert!(RepPair::parse("1 2", 2).is_err());
        assert!(RepPair::parse("+7", 2).is_err());
    }

    #[test]
    fn enumeration_order_is_length_major_signed_lex() {
        let first: Vec<String> = all_pairs(2, 2).take(6).map(|p| p.to_string()).collect();
        assert_eq!(first, vec!["+1", "+2", "-1", "-2", "+1 +1", "+1 +2"]);
        assert_eq!(all_pairs(2, 3).count(), 4 + 16 + 64);
        assert_eq!(pair_count(2, 3), 84);
    }

    #[test]
    fn first_emitted_derivation_pair_is_the_smallest_commutator() {
        let pairs = derivation_form_pairs(2, 1, 1).unwrap();
        assert_eq!(pairs[0].indices(), &[1, 2, 1, 2]);
        assert_eq!(pairs[0].signs(), &[-1, -1, 1, 1]);
    }

    #[test]
    fn derivation_stream_prefixes_are_stable() {
        let short = derivation_form_pairs(2, 1, 10).unwrap();
        let long = derivation_form_pairs(2, 1, 120).unwrap();
        assert_eq!(long.len(), 120);
        assert_eq!(&long[..10], &short[..]);
        let k2 = derivation_form_pairs(2, 2, 25).unwrap();
        assert_eq!(k2.len(), 25);
        let k2_short = derivation_form_pairs(2, 2, 5).unwrap();
        assert_eq!(&k2[..5], &k2_short[..]);
    }

    #[test]
    fn derivation_pairs_have_vanishing_exponent_sums() {
        let z2 = Engine::free_abelian(2);
        let gens = z2.standard_generators();
        for p in derivation_form_pairs(2, 1, 100).unwrap() {
            assert!(p.is_first_derivation_form());
            assert_eq!(p.evaluate(&gens).unwrap(), z2.identity());
        }
    }

    #[test]
    fn first_derivation_form_agrees_with_abelianization_up_to_length_six() {
        let z2 = Engine::free_abelian(2);
        let gens = z2.standard_generators();
        for p in all_pairs(2, 6) {
            let abelian = p.evaluate(&gens).unwrap() == z2.identity();
            assert_eq!(p.is_first_derivation_form(), abelian, "pair {p}");
        }
    }
}
