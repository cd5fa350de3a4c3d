//! Sets of maximal minors, their cycling, and a sampled zero-divisor probe for
//! the twisted grassmannian modulo the ideal they generate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::grass::relations::MinorTable;
use crate::linalg::ScalarMatrix;
use crate::minors::{cycle_index_set, minor_content, IndexSet};
use crate::qmatrix::{Content, NCPoly, Word};
use crate::report::{Check, Report};
use crate::scalar::{q_power, LaurentScalar};
use crate::twist::twisted::TwistModel;

/// Generators of a homogeneous ideal, all `m`-subsets of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MinorSet {
    m: usize,
    n: usize,
    sets: BTreeSet<IndexSet>,
}

impl MinorSet {
    pub fn new(m: usize, n: usize, sets: impl IntoIterator<Item = IndexSet>) -> Result<Self> {
        let sets: BTreeSet<_> = sets.into_iter().collect();
        for s in &sets {
            if s.len() != m {
                return Err(Error::WrongCardinality {
                    expected: m,
                    got: s.len(),
                });
            }
            if s.ambient() != n {
                return Err(Error::IndexOutOfRange(format!("{s} is not a subset of 1..={n}")));
            }
        }
        Ok(Self { m, n, sets })
    }

    pub fn empty(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            sets: BTreeSet::new(),
        }
    }

    pub fn all(m: usize, n: usize) -> Self {
        Self {
            m,
            n,
            sets: IndexSet::all(m, n).into_iter().collect(),
        }
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &IndexSet) -> bool {
        self.sets.contains(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = &IndexSet> + '_ {
        self.sets.iter()
    }

    pub fn union(&self, other: &MinorSet) -> MinorSet {
        MinorSet {
            sets: self.sets.union(&other.sets).cloned().collect(),
            ..self.clone()
        }
    }

    pub fn intersection(&self, other: &MinorSet) -> MinorSet {
        MinorSet {
            sets: self.sets.intersection(&other.sets).cloned().collect(),
            ..self.clone()
        }
    }
}

impl fmt::Display for MinorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sets.iter().join(","))
    }
}

/// Applies `J -> J + 1` to every member.
pub fn cycle_minor_set(s: &MinorSet) -> MinorSet {
    MinorSet {
        sets: s.sets.iter().map(|j| cycle_index_set(j).0).collect(),
        ..s.clone()
    }
}

/// Cycling permutes all `m`-subsets and has order dividing `n`.
pub fn verify_minor_set_cycling(m: usize, n: usize) -> Report {
    let all = MinorSet::all(m, n);
    let mut report = Report::new();
    let params = json!({ "m": m, "n": n });
    let image = cycle_minor_set(&all);
    report.push(Check::expect("cycle-bijection", params.clone(), image == all, || {
        format!("image {image}")
    }));
    let failing = all.iter().find(|s| {
        let single = MinorSet::new(m, n, [(*s).clone()]).expect("m-subset");
        let mut cur = single.clone();
        for _ in 0..n {
            cur = cycle_minor_set(&cur);
        }
        cur != single
    });
    report.push(Check::expect("cycle-order", params, failing.is_none(), || {
        format!("{} does not return after {n} steps", failing.expect("failing set"))
    }));
    report
}

/// Outcome of [`domain_probe`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainProbe {
    pub ideal: MinorSet,
    pub degree_bound: usize,
    pub pairs_tested: usize,
    /// `(a, b)` with `a b` in the ideal although neither factor is.
    pub zero_divisors: Vec<(String, String)>,
    /// The ideal contains every positive-degree element.
    pub degenerate: bool,
}

impl DomainProbe {
    pub fn passed(&self) -> bool {
        self.zero_divisors.is_empty()
    }
}

const SAMPLE_COEFFS: [(i64, i64); 6] = [(1, 0), (-1, 0), (2, 0), (1, 1), (-1, 1), (1, -1)];

struct Sampler<'a> {
    table: &'a MinorTable,
    sets: Vec<IndexSet>,
    rng: ChaCha8Rng,
}

/// `[J_1] ... [J_k]`, reusing the cached pair products.
fn minor_product(table: &MinorTable, factors: &[IndexSet]) -> Result<NCPoly> {
    let mut acc: Option<NCPoly> = None;
    for chunk in factors.chunks(2) {
        let p = match chunk {
            [a, b] => table.product(a, b)?.clone(),
            [a] => table.minor(a)?.clone(),
            _ => unreachable!("chunks of two"),
        };
        acc = Some(match acc {
            None => p,
            Some(a) => &a * &p,
        });
    }
    acc.ok_or_else(|| Error::PrereqViolation("empty product".into()))
}

impl Sampler<'_> {
    /// A nonzero combination of one to three products of `degree` minors.
    fn element(&mut self, degree: usize) -> Result<NCPoly> {
        let (m, n) = self.table.ambient();
        loop {
            let mut acc = NCPoly::zero(m, n);
            for _ in 0..self.rng.gen_range(1..=3) {
                let factors: Vec<_> = (0..degree)
                    .map(|_| self.sets[self.rng.gen_range(0..self.sets.len())].clone())
                    .collect();
                let (c, e) = SAMPLE_COEFFS[self.rng.gen_range(0..SAMPLE_COEFFS.len())];
                acc =
                    &acc + &minor_product(self.table, &factors)?.scale(&(&LaurentScalar::from_int(c) * &q_power(e, m)));
            }
            if !acc.is_zero() {
                return Ok(acc);
            }
        }
    }
}

/// Degree-`k` part of the ideal generated by `S`, one spanning set per content.
struct IdealSpan<'a> {
    table: &'a MinorTable,
    ideal: &'a MinorSet,
    cache: BTreeMap<(usize, Content), Vec<NCPoly>>,
}

impl IdealSpan<'_> {
    fn spanning(&mut self, degree: usize, content: &Content) -> Result<&[NCPoly]> {
        let key = (degree, content.clone());
        if !self.cache.contains_key(&key) {
            let sets: Vec<_> = self.table.index_sets().cloned().collect();
            let mut out = Vec::new();
            for tuple in (0..degree).map(|_| sets.iter()).multi_cartesian_product() {
                if !tuple.iter().any(|s| self.ideal.contains(s)) {
                    continue;
                }
                let c = tuple
                    .iter()
                    .fold(Content::zero(content.len()), |acc, s| &acc + &minor_content(s));
                if &c != content {
                    continue;
                }
                let factors: Vec<IndexSet> = tuple.into_iter().cloned().collect();
                out.push(minor_product(self.table, &factors)?);
            }
            self.cache.insert(key.clone(), out);
        }
        Ok(&self.cache[&key])
    }

    /// Membership of a degree-homogeneous element, component by component.
    fn contains(&mut self, degree: usize, a: &NCPoly) -> Result<bool> {
        if self.ideal.is_empty() {
            return Ok(a.is_zero());
        }
        for (content, comp) in a.homogeneous_components() {
            let span = self.spanning(degree, &content)?.to_vec();
            if !in_span(&span, &comp) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn in_span(span: &[NCPoly], v: &NCPoly) -> bool {
    let mut words: Vec<Word> = span
        .iter()
        .chain(std::iter::once(v))
        .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
        .collect();
    words.sort();
    words.dedup();
    let index: BTreeMap<Word, usize> = words.into_iter().enumerate().map(|(i, w)| (w, i)).collect();
    let row = |p: &NCPoly| p.coefficients_over(&index).expect("index covers every word");
    let mut rows: Vec<_> = span.iter().map(row).collect();
    let base = ScalarMatrix::from_rows(rows.clone()).rank();
    rows.push(row(v));
    ScalarMatrix::from_rows(rows).rank() == base
}

/// Samples `pairs` products of nonzero degree-homogeneous elements of degree
/// `<= degree_bound` in the twisted grassmannian, modulo the ideal spanned by `s`.
pub fn domain_probe(s: &MinorSet, degree_bound: usize, pairs: usize, seed: u64) -> Result<DomainProbe> {
    let (m, n) = s.ambient();
    if !(1..=2).contains(&degree_bound) {
        return Err(Error::PrereqViolation(format!(
            "degree bound {degree_bound} outside 1..=2"
        )));
    }
    let all = MinorSet::all(m, n);
    if s == &all {
        return Ok(DomainProbe {
            ideal: s.clone(),
            degree_bound,
            pairs_tested: 0,
            zero_divisors: Vec::new(),
            degenerate: true,
        });
    }
    let table = MinorTable::new(m, n)?;
    let tm = TwistModel::grass(m, n);
    let mut sampler = Sampler {
        table: &table,
        sets: all.iter().cloned().collect(),
        rng: ChaCha8Rng::seed_from_u64(seed),
    };
    let mut ideal = IdealSpan {
        table: &table,
        ideal: s,
        cache: BTreeMap::new(),
    };
    let mut zero_divisors = Vec::new();
    let mut tested = 0;
    while tested < pairs {
        let (da, db) = (
            sampler.rng.gen_range(1..=degree_bound),
            sampler.rng.gen_range(1..=degree_bound),
        );
        let a = sampler.element(da)?;
        let b = sampler.element(db)?;
        if ideal.contains(da, &a)? || ideal.contains(db, &b)? {
            continue;
        }
        tested += 1;
        let prod = tm.twisted_mul(&tm.twist_grass(a.clone())?, &tm.twist_grass(b.clone())?)?;
        let carrier = prod.carrier().as_grass().expect("grassmannian carrier");
        if ideal.contains(da + db, carrier)? {
            zero_divisors.push((a.to_string(), b.to_string()));
        }
    }
    Ok(DomainProbe {
        ideal: s.clone(),
        degree_bound,
        pairs_tested: tested,
        zero_divisors,
        degenerate: false,
    })
}

pub fn probe_report(probe: &DomainProbe, seed: u64) -> Report {
    let (m, n) = probe.ideal.ambient();
    let params =
        json!({ "m": m, "n": n, "ideal": probe.ideal.to_string(), "degree_bound": probe.degree_bound, "seed": seed });
    let check = if probe.degenerate {
        Check::ok_with("domain-probe", params, "degenerate quotient")
    } else if probe.passed() {
        Check::ok_with(
            "domain-probe",
            params,
            format!("{} pairs, no zero divisors", probe.pairs_tested),
        )
    } else {
        let (a, b) = &probe.zero_divisors[0];
        Check::fail(
            "domain-probe",
            params,
            format!(
                "{} of {} pairs vanish; first: a = {a}; b = {b}",
                probe.zero_divisors.len(),
                probe.pairs_tested
            ),
        )
    };
    Report::from_iter([check])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[&[usize]]) -> MinorSet {
        MinorSet::new(2, 4, v.iter().map(|s| IndexSet::new(s.to_vec(), 4).unwrap())).unwrap()
    }

    #[test]
    fn cycling_examples() {
        assert_eq!(cycle_minor_set(&ms(&[&[1, 2]])), ms(&[&[2, 3]]));
        assert_eq!(
            cycle_minor_set(&ms(&[&[1, 2], &[1, 3], &[1, 4]])),
            ms(&[&[2, 3], &[2, 4], &[1, 2]])
        );
        assert_eq!(cycle_minor_set(&MinorSet::all(2, 4)), MinorSet::all(2, 4));
        for (m, n) in [(2, 4), (2, 5), (3, 6)] {
            assert!(verify_minor_set_cycling(m, n).all_ok());
        }
    }

    #[test]
    fn cycling_commutes_with_set_operations() {
        let a = ms(&[&[1, 2], &[2, 4]]);
        let b = ms(&[&[2, 4], &[3, 4]]);
        assert_eq!(
            cycle_minor_set(&a.union(&b)),
            cycle_minor_set(&a).union(&cycle_minor_set(&b))
        );
        assert_eq!(
            cycle_minor_set(&a.intersection(&b)),
            cycle_minor_set(&a).intersection(&cycle_minor_set(&b))
        );
        assert_eq!(cycle_minor_set(&a).len(), a.len());
    }

    #[test]
    fn wrong_cardinality_rejected() {
        let err = MinorSet::new(2, 4, [IndexSet::new(vec![1], 4).unwrap()]);
        assert!(matches!(err, Err(Error::WrongCardinality { .. })));
    }

    #[test]
    fn probe_without_ideal() {
        let probe = domain_probe(&MinorSet::empty(2, 4), 2, 30, 1).unwrap();
        assert!(probe.passed() && !probe.degenerate);
        assert_eq!(probe.pairs_tested, 30);
    }

    #[test]
    fn probe_degenerate() {
        let probe = domain_probe(&MinorSet::all(2, 4), 2, 10, 1).unwrap();
        assert!(probe.degenerate);
    }

    #[test]
    fn probe_modulo_a_normal_minor() {
        // [12] is normal and generates a prime ideal; so does its cycle [23]
        for s in [ms(&[&[1, 2]]), ms(&[&[2, 3]])] {
            let probe = domain_probe(&s, 1, 20, 3).unwrap();
            assert!(probe.passed(), "{:?}", probe.zero_divisors);
        }
    }

    #[test]
    fn probe_detects_a_non_prime_ideal() {
        // the Plücker relation puts [13][24] in this ideal, which holds neither factor
        let s = ms(&[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]);
        let probe = domain_probe(&s, 1, 40, 5).unwrap();
        assert!(!probe.degenerate);
        assert!(!probe.passed());
    }

    #[test]
    fn degree_bound_is_checked() {
        assert!(matches!(
            domain_probe(&MinorSet::empty(2, 4), 3, 1, 0),
            Err(Error::PrereqViolation(_))
        ));
    }
}
