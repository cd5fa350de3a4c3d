//! The quantum matrix algebra `O_q(M_{m,n})`.
//!
//! Elements are kept in PBW normal form: linear combinations of words whose
//! generators are nondecreasing in the lexicographic `(row, col)` order. The four
//! families of defining relations are oriented into rewrite rules that replace an
//! out-of-order adjacent pair `X_ab X_cd` (with `(a,b) > (c,d)`):
//!
//! | shape            | rewrite                                         |
//! |------------------|-------------------------------------------------|
//! | `a = c`          | `q^-1 X_cd X_ab`                                |
//! | `b = d`          | `q^-1 X_cd X_ab`                                |
//! | `a > c`, `b < d` | `X_cd X_ab`                                     |
//! | `a > c`, `b > d` | `X_cd X_ab - (q - q^-1) X_cb X_ad`              |
//!
//! Every rewrite produces lexicographically smaller words of the same length, so
//! the reducer processes words largest-first and each word is visited once with
//! its fully accumulated coefficient.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{monomial_ratio, q_minus_q_inv, q_power, LaurentScalar};

/// Generator `X_{row,col}` (1-based).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub row: u8,
    pub col: u8,
}

impl Gen {
    pub fn new(row: usize, col: usize) -> Self {
        Self {
            row: row as u8,
            col: col as u8,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{},{}]", self.row, self.col)
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word in the generators. Ordered lexicographically.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn new(gens: Vec<Gen>) -> Self {
        Self(gens)
    }

    pub fn is_normal(&self) -> bool {
        self.first_descent().is_none()
    }

    fn first_descent(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[0] > w[1])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Column content of the word in an ambient with `n` columns.
    pub fn content(&self, n: usize) -> Content {
        let mut c = vec![0i64; n];
        for g in &self.0 {
            c[g.col as usize - 1] += 1;
        }
        Content(c)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A `Z^n` grading degree.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Content(pub Vec<i64>);

impl Content {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Standard basis vector `eps(j)`, 1-based.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j - 1] = 1;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &Content {
    type Output = Content;
    fn add(self, rhs: &Content) -> Content {
        assert_eq!(self.0.len(), rhs.0.len(), "content length mismatch");
        Content(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Content {
    type Output = Content;
    fn sub(self, rhs: &Content) -> Content {
        assert_eq!(self.0.len(), rhs.0.len(), "content length mismatch");
        Content(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Result of a counted reduction.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub poly: NCPoly,
    pub steps: usize,
}

/// An element of `O_q(M_{m,n})` in canonical normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NCPoly {
    m: usize,
    n: usize,
    terms: BTreeMap<Word, LaurentScalar>,
}

fn add_into(map: &mut BTreeMap<Word, LaurentScalar>, w: Word, c: LaurentScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(w) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Largest-first reduction of a linear combination of arbitrary words.
fn reduce(mut work: BTreeMap<Word, LaurentScalar>, m: usize) -> (BTreeMap<Word, LaurentScalar>, usize) {
    let q_inv_shift = -(m as i64);
    let correction = -q_minus_q_inv(m);
    let mut out = BTreeMap::new();
    let mut steps = 0;
    while let Some((w, c)) = work.pop_last() {
        let Some(k) = w.first_descent() else {
            out.insert(w, c);
            continue;
        };
        steps += 1;
        let (x, y) = (w.0[k], w.0[k + 1]);
        let mut swapped = w.0.clone();
        swapped.swap(k, k + 1);
        if x.row == y.row || x.col == y.col {
            add_into(&mut work, Word(swapped), c.shift(q_inv_shift));
        } else if x.col < y.col {
            add_into(&mut work, Word(swapped), c);
        } else {
            let mut corr = w.0;
            corr[k] = Gen { row: y.row, col: x.col };
            corr[k + 1] = Gen { row: x.row, col: y.col };
            add_into(&mut work, Word(corr), &c * &correction);
            add_into(&mut work, Word(swapped), c);
        }
    }
    (out, steps)
}

impl NCPoly {
    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: usize, n: usize) -> Self {
        Self::scalar(m, n, LaurentScalar::one())
    }

    pub fn scalar(m: usize, n: usize, c: LaurentScalar) -> Self {
        let mut terms = BTreeMap::new();
        add_into(&mut terms, Word::default(), c);
        Self { m, n, terms }
    }

    /// The generator `X_{row,col}`.
    pub fn generator(m: usize, n: usize, row: usize, col: usize) -> Result<Self> {
        Self::from_word(m, n, Word(vec![Gen::new(row, col)]))
    }

    /// Normal form of a single (possibly unordered) word.
    pub fn from_word(m: usize, n: usize, w: Word) -> Result<Self> {
        Ok(normalize(&w, m, n)?.poly)
    }

    /// Normal form of an arbitrary linear combination of words.
    pub fn from_terms<I>(m: usize, n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, LaurentScalar)>,
    {
        let mut work = BTreeMap::new();
        for (w, c) in terms {
            check_word(&w, m, n)?;
            add_into(&mut work, w, c);
        }
        let (terms, _) = reduce(work, m);
        Ok(Self { m, n, terms })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentScalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> LaurentScalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// Smallest word; it is the leading term under the monomial order in which
    /// the correction term of the fourth relation family is always larger.
    pub fn leading_term(&self) -> Option<(&Word, &LaurentScalar)> {
        self.terms.iter().next()
    }

    /// `q^k` in this ambient.
    pub fn q(&self, k: i64) -> LaurentScalar {
        q_power(k, self.m)
    }

    fn check_ambient(&self, other: &NCPoly) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return Err(Error::AmbientMismatch(self.m, self.n, other.m, other.n));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_ambient(other)?;
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut terms, w.clone(), c.clone());
        }
        Ok(NCPoly { terms, ..*self })
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &NCPoly) -> Result<NCPoly> {
        Ok(self.mul_counted(other)?.poly)
    }

    /// Product with the number of rewrite steps spent normalising.
    pub fn mul_counted(&self, other: &NCPoly) -> Result<Reduction> {
        self.check_ambient(other)?;
        let mut work = BTreeMap::new();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                add_into(&mut work, wa.concat(wb), ca * cb);
            }
        }
        let (terms, steps) = reduce(work, self.m);
        Ok(Reduction {
            poly: NCPoly { terms, ..*self },
            steps,
        })
    }

    pub fn scale(&self, lambda: &LaurentScalar) -> NCPoly {
        if lambda.is_zero() {
            return NCPoly::zero(self.m, self.n);
        }
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c * lambda)).collect();
        NCPoly { terms, ..*self }
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        let mut acc = NCPoly::one(self.m, self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Common column content of all words, or an error naming two witnesses.
    pub fn column_content(&self) -> Result<Content> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroElement)?;
        let c = first.content(self.n);
        for w in it {
            if w.content(self.n) != c {
                return Err(Error::Inhomogeneous(first.to_string(), w.to_string()));
            }
        }
        Ok(c)
    }

    /// Splits into column-content homogeneous components.
    pub fn homogeneous_components(&self) -> BTreeMap<Content, NCPoly> {
        let mut out: BTreeMap<Content, NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.content(self.n))
                .or_insert_with(|| NCPoly::zero(self.m, self.n))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// The single-term `lambda` with `self = lambda * other`, if it exists.
    pub fn monomial_ratio(&self, other: &NCPoly) -> Result<Option<LaurentScalar>> {
        self.check_ambient(other)?;
        let Some((w, c)) = other.leading_term() else {
            return Err(Error::ZeroDivisor);
        };
        if self.terms.len() != other.terms.len() {
            return Ok(None);
        }
        let Some(lambda) = monomial_ratio(&self.coeff(w), c)? else {
            return Ok(None);
        };
        if &other.scale(&lambda) == self {
            Ok(Some(lambda))
        } else {
            Ok(None)
        }
    }

    /// The scalar `lambda` with `self = lambda * other`, if it exists.
    pub fn ratio(&self, other: &NCPoly) -> Result<Option<LaurentScalar>> {
        self.check_ambient(other)?;
        let Some((w, c)) = other.leading_term() else {
            return Err(Error::ZeroDivisor);
        };
        let Some(lambda) = self.coeff(w).div_exact(c) else {
            return Ok(None);
        };
        Ok((&other.scale(&lambda) == self).then_some(lambda))
    }

    /// Exact right division: the `v` with `v * divisor = self`, if any.
    ///
    /// Peels off leading terms; requires the leading coefficient of the divisor
    /// (after reordering) to be a unit, which holds for quantum minors.
    pub fn right_divide(&self, divisor: &NCPoly) -> Result<Option<NCPoly>> {
        self.check_ambient(divisor)?;
        let (dw, _) = divisor.leading_term().ok_or(Error::ZeroDivisor)?;
        let mut rem = self.clone();
        let mut quot = NCPoly::zero(self.m, self.n);
        while let Some((rw, rc)) = rem.leading_term() {
            let Some(vw) = multiset_difference(rw, dw) else {
                return Ok(None);
            };
            let mono = NCPoly {
                m: self.m,
                n: self.n,
                terms: BTreeMap::from([(vw.clone(), LaurentScalar::one())]),
            };
            let prod = &mono * divisor;
            let Some((pw, pc)) = prod.leading_term() else {
                return Ok(None);
            };
            if pw != rw {
                return Ok(None);
            }
            let Some(inv) = pc.inverse_unit() else {
                return Ok(None);
            };
            let coeff = rc * &inv;
            rem = &rem - &prod.scale(&coeff);
            add_into(&mut quot.terms, vw, coeff);
        }
        Ok(Some(quot))
    }

    /// Dense coefficient vector over a fixed word basis; words outside the basis
    /// make this return `None`.
    pub fn coefficients_over(&self, basis: &BTreeMap<Word, usize>) -> Option<Vec<LaurentScalar>> {
        let mut v = vec![LaurentScalar::zero(); basis.len()];
        for (w, c) in &self.terms {
            v[*basis.get(w)?] = c.clone();
        }
        Some(v)
    }

    /// Reinterprets coefficients for a new ambient, substituting `q -> q'`.
    ///
    /// Requires every coefficient to be a polynomial in `q` (exponents of `t`
    /// divisible by `m`) and every generator to fit the new ambient.
    pub fn embed(&self, m: usize, n: usize) -> Result<NCPoly> {
        let mut terms = BTreeMap::new();
        for (w, c) in &self.terms {
            check_word(w, m, n)?;
            let c = c
                .rescale(self.m as i64, m as i64)
                .ok_or_else(|| Error::PrereqViolation(format!("coefficient {c} is not a q-polynomial")))?;
            terms.insert(w.clone(), c);
        }
        Ok(NCPoly { m, n, terms })
    }
}

/// Removes the multiset `sub` from the sorted word `w`, returning the sorted rest.
fn multiset_difference(w: &Word, sub: &Word) -> Option<Word> {
    let mut rest = Vec::with_capacity(w.len().saturating_sub(sub.len()));
    let mut j = 0;
    for g in &w.0 {
        if j < sub.0.len() && *g == sub.0[j] {
            j += 1;
        } else {
            rest.push(*g);
        }
    }
    (j == sub.0.len()).then_some(Word(rest))
}

fn check_word(w: &Word, m: usize, n: usize) -> Result<()> {
    for g in &w.0 {
        let (r, c) = (g.row as usize, g.col as usize);
        if r == 0 || r > m || c == 0 || c > n {
            return Err(Error::IndexOutOfRange(format!("{g} outside {m}x{n}")));
        }
    }
    Ok(())
}

/// Normal form of a word, with the number of rewrite steps used.
pub fn normalize(w: &Word, m: usize, n: usize) -> Result<Reduction> {
    check_word(w, m, n)?;
    let work = BTreeMap::from([(w.clone(), LaurentScalar::one())]);
    let (terms, steps) = reduce(work, m);
    Ok(Reduction {
        poly: NCPoly { m, n, terms },
        steps,
    })
}

impl Index<&Word> for NCPoly {
    type Output = LaurentScalar;
    fn index(&self, w: &Word) -> &LaurentScalar {
        static ZERO: std::sync::OnceLock<LaurentScalar> = std::sync::OnceLock::new();
        self.terms
            .get(w)
            .unwrap_or_else(|| ZERO.get_or_init(LaurentScalar::zero))
    }
}

/// Panics on ambient mismatch; use [`NCPoly::try_add`] for the fallible form.
impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("NCPoly ambient mismatch")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_sub(rhs).expect("NCPoly ambient mismatch")
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.try_mul(rhs).expect("NCPoly ambient mismatch")
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        NCPoly { terms, ..*self }
    }
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.len() > 1 {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            if !w.is_empty() {
                write!(f, " * {w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}x{}]({self})", self.m, self.n)
    }
}

impl Serialize for NCPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
