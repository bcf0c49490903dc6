use std::collections::{HashMap, HashSet, VecDeque};

use crate::{Error, Result};

/// Exhaustive associativity checking is cubic in the order; larger tables are
/// accepted with `associativity_verified = false` recorded in load metadata.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

/// A finite group given by element names and a full multiplication table.
///
/// `table[a * n + b]` is the index of the product `a * b`. Element order is
/// the table order and is the contract for partition block encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    associativity_verified: bool,
}

impl FiniteGroup {
    /// Validates and loads a multiplication table.
    ///
    /// Rows and columns must be permutations of `0..n`, the stated identity
    /// must act neutrally on both sides, and (for n up to
    /// [`ASSOCIATIVITY_CHECK_LIMIT`]) associativity is checked exhaustively.
    pub fn from_table(names: Vec<String>, rows: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty element list".into()));
        }
        let mut seen_names = HashSet::new();
        for name in &names {
            if !seen_names.insert(name.as_str()) {
                return Err(Error::InvalidTable(format!("duplicate element name {name:?}")));
            }
        }
        if rows.len() != n {
            return Err(Error::InvalidTable(format!(
                "expected {n} rows, found {}",
                rows.len()
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!("entry {v} out of range in row {i}")));
                }
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
            }
            table.extend_from_slice(row);
        }
        for col in 0..n {
            let mut seen = vec![false; n];
            for row in 0..n {
                let v = table[row * n + col];
                if seen[v] {
                    return Err(Error::InvalidTable(format!("column {col} is not a permutation")));
                }
                seen[v] = true;
            }
        }
        if identity >= n {
            return Err(Error::InvalidTable(format!("identity index {identity} out of range")));
        }
        for a in 0..n {
            if table[identity * n + a] != a || table[a * n + identity] != a {
                return Err(Error::InvalidTable(format!(
                    "index {identity} is not a two-sided identity"
                )));
            }
        }
        let associativity_verified = n <= ASSOCIATIVITY_CHECK_LIMIT;
        if associativity_verified {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b];
                    for c in 0..n {
                        if table[ab * n + c] != table[a * n + table[b * n + c]] {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| table[a * n + b] == identity).ok_or_else(|| {
                Error::InvalidTable(format!("element {a} has no right inverse"))
            })?;
            if table[inv * n + a] != identity {
                return Err(Error::InvalidTable(format!("inverse of {a} is one-sided")));
            }
            inverses[a] = inv;
        }
        Ok(FiniteGroup { names, table, identity, inverses, associativity_verified })
    }

    /// Builds the group generated by permutations of `0..degree`, given as
    /// one-line image arrays. Elements are listed in breadth-first closure
    /// order starting from the identity; names use cycle notation.
    pub fn from_permutations(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidPermutation("degree must be positive".into()));
        }
        if generators.is_empty() {
            return Err(Error::InvalidPermutation("no generator permutations given".into()));
        }
        for (i, p) in generators.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {i} has length {}, expected {degree}",
                    p.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &v in p {
                if v >= degree || seen[v] {
                    return Err(Error::InvalidPermutation(format!(
                        "generator {i} is not a permutation of 0..{degree}"
                    )));
                }
                seen[v] = true;
            }
        }
        // (p * q)(i) = p[q[i]]: right factor acts first.
        let compose = |p: &[usize], q: &[usize]| -> Vec<usize> {
            q.iter().map(|&i| p[i]).collect()
        };
        let id: Vec<usize> = (0..degree).collect();
        let mut elements: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(cur) = queue.pop_front() {
            for g in &generators {
                let next = compose(&elements[cur], g);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut rows = Vec::with_capacity(n);
        for a in &elements {
            let row: Vec<usize> = elements.iter().map(|b| index[&compose(a, b)]).collect();
            rows.push(row);
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(names, rows, 0)
    }

    /// Direct product with elements ordered left-major and names `a|b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (self.order(), other.order());
        let n = na * nb;
        let mut names = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                names.push(format!("{}|{}", self.names[i], other.names[j]));
            }
        }
        let mut table = vec![0usize; n * n];
        for i1 in 0..na {
            for j1 in 0..nb {
                for i2 in 0..na {
                    for j2 in 0..nb {
                        let a = i1 * nb + j1;
                        let b = i2 * nb + j2;
                        table[a * n + b] = self.mul(i1, i2) * nb + other.mul(j1, j2);
                    }
                }
            }
        }
        let identity = self.identity * nb + other.identity;
        let mut inverses = vec![0usize; n];
        for i in 0..na {
            for j in 0..nb {
                inverses[i * nb + j] = self.inverses[i] * nb + other.inverses[j];
            }
        }
        FiniteGroup {
            names,
            table,
            identity,
            inverses,
            associativity_verified: self.associativity_verified && other.associativity_verified,
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// False only for tables above the exhaustive-check limit.
    pub fn associativity_verified(&self) -> bool {
        self.associativity_verified
    }

    /// BFS closure of a set of element indices under multiplication.
    /// Inverses come for free in a finite group.
    pub fn closure(&self, seeds: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        let mut out = vec![self.identity];
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
                out.push(s);
            }
        }
        while let Some(cur) = queue.pop_front() {
            for &s in seeds {
                let next = self.mul(cur, s);
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                    out.push(next);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Cycle notation over 0-based points; the identity prints as "e".
fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        out.push('(');
        let mut cur = start;
        let mut first = true;
        while !seen[cur] {
            seen[cur] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&cur.to_string());
            first = false;
            cur = perm[cur];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Cyclic group of order n with names "0".."n-1".
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0);
    let names = (0..n).map(|i| i.to_string()).collect();
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(names, rows, 0).expect("cyclic table is valid")
}

/// Dihedral group of order 2n: rotations r0..r(n-1), reflections s0..s(n-1).
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n > 0);
    let mut names: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
    names.extend((0..n).map(|i| format!("s{i}")));
    let idx = |rot: bool, i: usize| if rot { i } else { n + i };
    let mut rows = Vec::with_capacity(2 * n);
    for a in 0..2 * n {
        let mut row = Vec::with_capacity(2 * n);
        for b in 0..2 * n {
            let prod = match (a < n, b < n) {
                (true, true) => idx(true, (a + b) % n),
                (true, false) => idx(false, (a + (b - n)) % n),
                (false, true) => idx(false, (n + (a - n) - b) % n),
                (false, false) => idx(true, (n + (a - n) - (b - n)) % n),
            };
            row.push(prod);
        }
        rows.push(row);
    }
    FiniteGroup::from_table(names, rows, 0).expect("dihedral table is valid")
}

/// Quaternion group of order 8.
pub fn quaternion() -> FiniteGroup {
    // order: 1, -1, i, -i, j, -j, k, -k
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let neg = |x: usize| x ^ 1;
    let mut rows = vec![vec![0usize; 8]; 8];
    // base products among {1, i, j, k} (indices 0, 2, 4, 6), sign carried apart
    let base_mul = |a: usize, b: usize| -> (usize, bool) {
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (2, 2) | (4, 4) | (6, 6) => (0, true),
            (2, 4) => (6, false),
            (4, 2) => (6, true),
            (4, 6) => (2, false),
            (6, 4) => (2, true),
            (6, 2) => (4, false),
            (2, 6) => (4, true),
            _ => unreachable!(),
        }
    };
    for (a, row) in rows.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            let (p, mut s) = base_mul(a & !1, b & !1);
            s ^= (a & 1 == 1) ^ (b & 1 == 1);
            *cell = if s { neg(p) } else { p };
        }
    }
    FiniteGroup::from_table(names.iter().map(|s| s.to_string()).collect(), rows, 0)
        .expect("quaternion table is valid")
}

/// Symmetric group S3 generated by the transpositions (0 1) and (0 2).
pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::from_permutations(3, vec![vec![1, 0, 2], vec![2, 1, 0]])
        .expect("S3 generators are valid")
}

/// Alternating group A4 generated by two 3-cycles.
pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_permutations(4, vec![vec![1, 2, 0, 3], vec![0, 2, 3, 1]])
        .expect("A4 generators are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_is_addition() {
        let z4 = cyclic(4);
        assert_eq!(z4.mul(3, 2), 1);
        assert_eq!(z4.inverse(3), 1);
        assert_eq!(z4.identity_index(), 0);
    }

    #[test]
    fn rejects_non_latin_row() {
        let names = vec!["e".into(), "a".into()];
        let rows = vec![vec![0, 0], vec![1, 0]];
        assert!(matches!(FiniteGroup::from_table(names, rows, 0), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn rejects_bad_identity() {
        let names = vec!["e".into(), "a".into()];
        let rows = vec![vec![0, 1], vec![1, 0]];
        assert!(matches!(FiniteGroup::from_table(names, rows, 1), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn rejects_nonassociative_latin_square() {
        // Latin square with two-sided identity 0 that is not a group table
        // (a Steiner-style quasigroup on 5 points fails associativity).
        let names = (0..5).map(|i| i.to_string()).collect();
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(names, rows, 0), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn permutation_closure_builds_s3() {
        let s3 = symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.name(0), "e");
        assert!(s3.index_of_name("(0 1)").is_some());
    }

    #[test]
    fn quaternion_relations() {
        let q8 = quaternion();
        let i = q8.index_of_name("i").unwrap();
        let j = q8.index_of_name("j").unwrap();
        let k = q8.index_of_name("k").unwrap();
        let m1 = q8.index_of_name("-1").unwrap();
        assert_eq!(q8.mul(i, i), m1);
        assert_eq!(q8.mul(i, j), k);
        assert_eq!(q8.mul(j, i), q8.inverse(k));
    }

    #[test]
    fn dihedral_order_and_relations() {
        let d4 = dihedral(4);
        assert_eq!(d4.order(), 8);
        let r1 = d4.index_of_name("r1").unwrap();
        let s0 = d4.index_of_name("s0").unwrap();
        // s r s = r^-1
        let srs = d4.mul(d4.mul(s0, r1), s0);
        assert_eq!(srs, d4.inverse(r1));
    }

    #[test]
    fn closure_of_generators() {
        let z6 = cyclic(6);
        assert_eq!(z6.closure(&[2]).len(), 3);
        assert_eq!(z6.closure(&[1]).len(), 6);
        assert_eq!(z6.closure(&[]).len(), 1);
    }

    #[test]
    fn large_tables_skip_the_associativity_check_with_a_flag() {
        assert!(cyclic(ASSOCIATIVITY_CHECK_LIMIT).associativity_verified());
        let big = cyclic(ASSOCIATIVITY_CHECK_LIMIT + 6);
        assert!(!big.associativity_verified());
        assert_eq!(big.order(), 70);
    }
}
