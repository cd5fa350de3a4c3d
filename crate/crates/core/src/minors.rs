//! Quantum minors and index-set arithmetic.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qmatrix::{Content, Gen, NCPoly, Word};
use crate::scalar::LaurentScalar;

/// Representative of `j mod n` in `1..=n`.
pub fn tilde(j: i64, n: usize) -> usize {
    let n = n as i64;
    ((j - 1).rem_euclid(n) + 1) as usize
}

/// A strictly increasing subset of `1..=n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSet {
    elems: Vec<usize>,
    n: usize,
}

impl IndexSet {
    /// Sorts and validates `elems`; repeated or out-of-range entries are rejected.
    pub fn new(mut elems: Vec<usize>, n: usize) -> Result<Self> {
        elems.sort_unstable();
        if let Some(w) = elems.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::PrereqViolation(format!("repeated index {}", w[0])));
        }
        if let Some(&e) = elems.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::IndexOutOfRange(format!("index {e} outside 1..={n}")));
        }
        Ok(Self { elems, n })
    }

    /// `{1, ..., k}`.
    pub fn initial(k: usize, n: usize) -> Self {
        Self {
            elems: (1..=k).collect(),
            n,
        }
    }

    /// All `k`-subsets of `1..=n` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<IndexSet> {
        (1..=n).combinations(k).map(|elems| IndexSet { elems, n }).collect()
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.elems.binary_search(&j).is_ok()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.elems.iter().all(|&e| other.contains(e))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let elems = self
            .elems
            .iter()
            .chain(&other.elems)
            .copied()
            .sorted()
            .dedup()
            .collect();
        IndexSet {
            elems,
            n: self.n.max(other.n),
        }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let elems = self.elems.iter().copied().filter(|&e| other.contains(e)).collect();
        IndexSet { elems, n: self.n }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        let elems = self.elems.iter().copied().filter(|&e| !other.contains(e)).collect();
        IndexSet { elems, n: self.n }
    }

    /// Complement in `1..=n`.
    pub fn complement(&self) -> IndexSet {
        let elems = (1..=self.n).filter(|&e| !self.contains(e)).collect();
        IndexSet { elems, n: self.n }
    }

    /// Same elements in a larger ambient.
    pub fn with_ambient(&self, n: usize) -> Result<IndexSet> {
        IndexSet::new(self.elems.clone(), n)
    }

    /// `{tilde(shift + k) : k in self}` as a sorted set.
    pub fn shifted(&self, shift: i64) -> IndexSet {
        let elems = self
            .elems
            .iter()
            .map(|&e| tilde(e as i64 + shift, self.n))
            .sorted()
            .collect();
        IndexSet { elems, n: self.n }
    }

    /// `{tilde(base - k) : k in self}` as a sorted set.
    pub fn reflected(&self, base: i64) -> IndexSet {
        let elems = self
            .elems
            .iter()
            .map(|&e| tilde(base - e as i64, self.n))
            .sorted()
            .collect();
        IndexSet { elems, n: self.n }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.elems.iter().join(","))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl IndexSet {
    /// Parses `[a,b,...]` in an ambient with `n` columns.
    pub fn parse(s: &str, n: usize) -> Result<IndexSet> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected `[..]`, got `{s}`")))?;
        let elems = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| usize::from_str(p.trim()).map_err(|_| Error::Parse(format!("bad index `{p}`"))))
                .collect::<Result<Vec<_>>>()?
        };
        IndexSet::new(elems, n)
    }
}

/// Row and column sets of a (not necessarily maximal) quantum minor.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair {
    pub rows: IndexSet,
    pub cols: IndexSet,
}

impl IndexPair {
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::WrongCardinality {
                expected: rows.len(),
                got: cols.len(),
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{{{}}}|{{{}}}]",
            self.rows.elems().iter().join(","),
            self.cols.elems().iter().join(",")
        )
    }
}

impl fmt::Debug for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coxeter length of a permutation of `0..k`.
pub fn inversions(perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .map(|(a, &pa)| perm[a + 1..].iter().filter(|&&pb| pb < pa).count())
        .sum()
}

/// Visits every `(perm, length)` of `S_k`.
pub fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize], usize)) {
    for perm in (0..k).permutations(k) {
        f(&perm, inversions(&perm));
    }
}

/// `[I|J] = sum_sigma (-q)^{l(sigma)} X_{i_sigma(1) j_1} ... X_{i_sigma(t) j_t}`.
pub fn quantum_minor(pair: &IndexPair, m: usize, n: usize) -> Result<NCPoly> {
    if pair.rows.elems().iter().any(|&r| r == 0 || r > m) || pair.cols.elems().iter().any(|&c| c == 0 || c > n) {
        return Err(Error::IndexOutOfRange(format!("{pair} outside {m}x{n}")));
    }
    let rows = pair.rows.elems();
    let cols = pair.cols.elems();
    let mut terms = Vec::new();
    for_each_permutation(rows.len(), |perm, len| {
        let w = Word::new(perm.iter().zip(cols).map(|(&s, &c)| Gen::new(rows[s], c)).collect());
        let sign = if len % 2 == 0 { 1 } else { -1 };
        terms.push((w, LaurentScalar::monomial(sign, (len * m) as i64)));
    });
    NCPoly::from_terms(m, n, terms)
}

/// The maximal minor `[J] = [{1..m}|J]` of `O_q(G(m,n))`.
pub fn maximal_minor(cols: &IndexSet, m: usize, n: usize) -> Result<NCPoly> {
    if cols.len() != m {
        return Err(Error::WrongCardinality {
            expected: m,
            got: cols.len(),
        });
    }
    let pair = IndexPair::new(IndexSet::initial(m, m), cols.clone())?;
    quantum_minor(&pair, m, n)
}

/// `M_alpha = {tilde(alpha), ..., tilde(alpha + m - 1)}`.
pub fn consecutive_minor(alpha: usize, m: usize, n: usize) -> IndexSet {
    let elems = (0..m).map(|k| tilde((alpha + k) as i64, n)).sorted().collect();
    IndexSet { elems, n }
}

/// Applies `j -> tilde(j + 1)`; `crossed` reports whether `n` wrapped to `1`.
pub fn cycle_index_set(set: &IndexSet) -> (IndexSet, bool) {
    (set.shifted(1), set.contains(set.n))
}

/// Indicator vector of `J`.
pub fn minor_content(set: &IndexSet) -> Content {
    let mut c = Content::zero(set.n);
    for &e in &set.elems {
        c.0[e - 1] += 1;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_power;

    fn set(v: &[usize], n: usize) -> IndexSet {
        IndexSet::new(v.to_vec(), n).unwrap()
    }

    fn x(m: usize, n: usize, i: usize, j: usize) -> NCPoly {
        NCPoly::generator(m, n, i, j).unwrap()
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(5, 4), 1);
        assert_eq!(tilde(4, 4), 4);
        assert_eq!(tilde(0, 4), 4);
        assert_eq!(tilde(-5, 4), 3);
    }

    #[test]
    fn index_set_validation() {
        assert!(matches!(IndexSet::new(vec![1, 1], 4), Err(Error::PrereqViolation(_))));
        assert!(matches!(IndexSet::new(vec![5], 4), Err(Error::IndexOutOfRange(_))));
        assert_eq!(IndexSet::parse("[3, 1]", 4).unwrap(), set(&[1, 3], 4));
        assert!(IndexSet::parse("[1,1]", 4).is_err());
    }

    #[test]
    fn minor_examples() {
        let p = IndexPair::new(set(&[1], 2), set(&[3], 4)).unwrap();
        assert_eq!(quantum_minor(&p, 2, 4).unwrap(), x(2, 4, 1, 3));

        // [12] = X11 X22 - q X12 X21, using X21 X12 = X12 X21.
        let q = q_power(1, 2);
        let expected = &(&x(2, 4, 1, 1) * &x(2, 4, 2, 2)) - &(&x(2, 4, 1, 2) * &x(2, 4, 2, 1)).scale(&q);
        assert_eq!(maximal_minor(&set(&[1, 2], 4), 2, 4).unwrap(), expected);

        let expected = &(&x(2, 4, 1, 3) * &x(2, 4, 2, 4)) - &(&x(2, 4, 1, 4) * &x(2, 4, 2, 3)).scale(&q);
        assert_eq!(maximal_minor(&set(&[3, 4], 4), 2, 4).unwrap(), expected);

        for j in 1..=5 {
            assert_eq!(maximal_minor(&set(&[j], 5), 1, 5).unwrap(), x(1, 5, 1, j));
        }
        assert!(matches!(
            maximal_minor(&set(&[1], 4), 2, 4),
            Err(Error::WrongCardinality { .. })
        ));
    }

    #[test]
    fn quantum_determinant_is_central_for_two_by_two() {
        let det = maximal_minor(&set(&[1, 2], 2), 2, 2).unwrap();
        for (i, j) in itertools::iproduct!(1..=2, 1..=2) {
            let g = x(2, 2, i, j);
            assert_eq!(&det * &g, &g * &det);
        }
    }

    #[test]
    fn two_by_two_minors_match_direct_formula() {
        let (m, n) = (3, 4);
        let q = q_power(1, m);
        for rows in IndexSet::all(2, m) {
            for cols in IndexSet::all(2, n) {
                let (i1, i2) = (rows.elems()[0], rows.elems()[1]);
                let (j1, j2) = (cols.elems()[0], cols.elems()[1]);
                let direct = &(&x(m, n, i1, j1) * &x(m, n, i2, j2)) - &(&x(m, n, i1, j2) * &x(m, n, i2, j1)).scale(&q);
                let pair = IndexPair::new(rows.clone(), cols).unwrap();
                assert_eq!(quantum_minor(&pair, m, n).unwrap(), direct);
            }
        }
    }

    #[test]
    fn consecutive_examples() {
        assert_eq!(consecutive_minor(1, 2, 4), set(&[1, 2], 4));
        assert_eq!(consecutive_minor(4, 2, 4), set(&[1, 4], 4));
        assert_eq!(consecutive_minor(2, 3, 6), set(&[2, 3, 4], 6));
        let all: Vec<_> = (1..=4).map(|a| consecutive_minor(a, 2, 4).to_string()).collect();
        assert_eq!(all, ["[1,2]", "[2,3]", "[3,4]", "[1,4]"]);
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(cycle_index_set(&set(&[1, 2], 4)), (set(&[2, 3], 4), false));
        assert_eq!(cycle_index_set(&set(&[2, 4], 4)), (set(&[1, 3], 4), true));
        assert_eq!(cycle_index_set(&set(&[1, 4], 4)), (set(&[1, 2], 4), true));
    }

    #[test]
    fn cycling_is_a_bijection_of_order_n() {
        for &(m, n) in &[(2, 4), (2, 5), (3, 6)] {
            let all = IndexSet::all(m, n);
            let mut images: Vec<_> = all.iter().map(|s| cycle_index_set(s).0).collect();
            images.sort();
            assert_eq!(images, all);
            for s in &all {
                let mut cur = s.clone();
                for _ in 0..n {
                    cur = cycle_index_set(&cur).0;
                }
                assert_eq!(&cur, s);
            }
        }
    }

    #[test]
    fn content_examples() {
        assert_eq!(minor_content(&set(&[1, 3], 4)), Content(vec![1, 0, 1, 0]));
        assert_eq!(minor_content(&IndexSet::initial(2, 4)), Content(vec![1, 1, 0, 0]));
        assert_eq!(minor_content(&set(&[], 4)), Content::zero(4));
    }

    #[test]
    fn minor_content_matches_column_content() {
        for &(m, n) in &[(2, 4), (2, 5), (3, 6)] {
            for s in IndexSet::all(m, n) {
                let minor = maximal_minor(&s, m, n).unwrap();
                assert_eq!(minor.column_content().unwrap(), minor_content(&s));
            }
        }
    }
}
