//! Degree-two relations among maximal minors: discovery as the kernel of the
//! multiplication map, the `G(2,4)` relation table, the failure of naive column
//! cycling, and Muir extension of relations to larger grassmannians.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, ScalarMatrix};
use crate::minors::{cycle_index_set, maximal_minor, minor_content, IndexSet};
use crate::qmatrix::{Content, NCPoly, Word};
use crate::report::{Check, Report};
use crate::scalar::{q_power, LaurentScalar};

/// All maximal minors of `G(m,n)` and their pairwise products, computed once.
#[derive(Debug, Clone)]
pub struct MinorTable {
    m: usize,
    n: usize,
    minors: BTreeMap<IndexSet, NCPoly>,
    products: BTreeMap<(IndexSet, IndexSet), NCPoly>,
}

impl MinorTable {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let minors = IndexSet::all(m, n)
            .into_iter()
            .map(|s| maximal_minor(&s, m, n).map(|p| (s, p)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let mut products = BTreeMap::new();
        for (a, pa) in &minors {
            for (b, pb) in &minors {
                products.insert((a.clone(), b.clone()), pa * pb);
            }
        }
        Ok(Self { m, n, minors, products })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn index_sets(&self) -> impl Iterator<Item = &IndexSet> + '_ {
        self.minors.keys()
    }

    pub fn minor(&self, s: &IndexSet) -> Result<&NCPoly> {
        self.minors
            .get(s)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{s} is not a minor of G({},{})", self.m, self.n)))
    }

    pub fn product(&self, a: &IndexSet, b: &IndexSet) -> Result<&NCPoly> {
        self.products
            .get(&(a.clone(), b.clone()))
            .ok_or_else(|| Error::IndexOutOfRange(format!("{a}{b} is not a product in G({},{})", self.m, self.n)))
    }

    /// Ordered minor pairs grouped by the content of their product.
    pub fn pairs_by_content(&self) -> BTreeMap<Content, Vec<(IndexSet, IndexSet)>> {
        let mut out: BTreeMap<Content, Vec<_>> = BTreeMap::new();
        for (a, b) in self.products.keys() {
            let c = &minor_content(a) + &minor_content(b);
            out.entry(c).or_default().push((a.clone(), b.clone()));
        }
        out
    }
}

/// One term `coeff * [left][right]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub coeff: LaurentScalar,
    pub left: IndexSet,
    pub right: IndexSet,
}

impl RelationTerm {
    pub fn new(coeff: LaurentScalar, left: IndexSet, right: IndexSet) -> Self {
        Self { coeff, left, right }
    }
}

/// `sum coeff_s [I_s][J_s] = 0` in `O_q(G(m,n))`, checked when constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticRelation {
    m: usize,
    n: usize,
    terms: Vec<RelationTerm>,
}

/// Evaluates `sum coeff [I][J]` in `O_q(M_{m,n})`.
pub fn evaluate_terms(m: usize, n: usize, terms: &[RelationTerm]) -> Result<NCPoly> {
    let mut acc = NCPoly::zero(m, n);
    for t in terms {
        let prod = &maximal_minor(&t.left, m, n)? * &maximal_minor(&t.right, m, n)?;
        acc = &acc + &prod.scale(&t.coeff);
    }
    Ok(acc)
}

impl QuadraticRelation {
    /// Fails with [`Error::NotARelation`] unless the combination vanishes.
    pub fn new(m: usize, n: usize, terms: Vec<RelationTerm>) -> Result<Self> {
        let value = evaluate_terms(m, n, &terms)?;
        if !value.is_zero() {
            return Err(Error::NotARelation(value.to_string()));
        }
        Ok(Self { m, n, terms })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn terms(&self) -> &[RelationTerm] {
        &self.terms
    }

    /// Union of all index sets appearing in the relation.
    pub fn support(&self) -> IndexSet {
        self.terms.iter().fold(IndexSet::initial(0, self.n), |acc, t| {
            acc.union(&t.left).union(&t.right)
        })
    }

    fn coefficient_vector(&self, index: &BTreeMap<(IndexSet, IndexSet), usize>) -> Vec<LaurentScalar> {
        let mut v = vec![LaurentScalar::zero(); index.len()];
        for t in &self.terms {
            let k = index[&(t.left.clone(), t.right.clone())];
            v[k] += &t.coeff;
        }
        v
    }
}

impl fmt::Display for QuadraticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if t.coeff.len() > 1 {
                write!(f, "({})", t.coeff)?;
            } else {
                write!(f, "{}", t.coeff)?;
            }
            write!(f, " {}{}", t.left, t.right)?;
        }
        f.write_str(" = 0")
    }
}

/// A basis of the degree-two relations of `O_q(G(m,n))`.
///
/// The product map is graded by content, so each content block is solved
/// separately; blocks are visited in content order and pairs in `(I, J)` order.
pub fn quadratic_relations(m: usize, n: usize) -> Result<Vec<QuadraticRelation>> {
    quadratic_relations_from(&MinorTable::new(m, n)?)
}

pub fn quadratic_relations_from(table: &MinorTable) -> Result<Vec<QuadraticRelation>> {
    let (m, n) = table.ambient();
    let mut out = Vec::new();
    for pairs in table.pairs_by_content().values() {
        let products = pairs
            .iter()
            .map(|(a, b)| table.product(a, b))
            .collect::<Result<Vec<_>>>()?;
        let words: BTreeMap<Word, usize> = {
            let mut all: Vec<Word> = products
                .iter()
                .flat_map(|p| p.terms().map(|(w, _)| w.clone()))
                .collect();
            all.sort();
            all.dedup();
            all.into_iter().enumerate().map(|(i, w)| (w, i)).collect()
        };
        let mut mat = ScalarMatrix::zeros(words.len(), pairs.len());
        for (col, p) in products.iter().enumerate() {
            for (w, c) in p.terms() {
                mat[(words[w], col)] = c.clone();
            }
        }
        for v in kernel_basis(&mat) {
            let terms = pairs
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b), c)| RelationTerm::new(c, a.clone(), b.clone()))
                .collect();
            out.push(QuadraticRelation::new(m, n, terms)?);
        }
    }
    Ok(out)
}

/// Whether `candidate` lies in the span of `relations` (all in `G(m,n)`).
pub fn relation_in_span(relations: &[QuadraticRelation], candidate: &[RelationTerm], m: usize, n: usize) -> bool {
    let sets = IndexSet::all(m, n);
    let index: BTreeMap<(IndexSet, IndexSet), usize> = sets
        .iter()
        .flat_map(|a| sets.iter().map(move |b| (a.clone(), b.clone())))
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let cand = QuadraticRelation {
        m,
        n,
        terms: candidate.to_vec(),
    };
    let mut rows: Vec<_> = relations.iter().map(|r| r.coefficient_vector(&index)).collect();
    let base = ScalarMatrix::from_rows(rows.clone()).rank();
    rows.push(cand.coefficient_vector(&index));
    ScalarMatrix::from_rows(rows).rank() == base
}

fn s(v: &[usize], n: usize) -> IndexSet {
    IndexSet::new(v.to_vec(), n).expect("valid literal index set")
}

fn term(coeff: LaurentScalar, a: &[usize], b: &[usize], n: usize) -> RelationTerm {
    RelationTerm::new(coeff, s(a, n), s(b, n))
}

/// The two forms of the `G(2,4)` quantum Plücker relation, as term lists.
pub fn plucker_forms() -> [Vec<RelationTerm>; 2] {
    let q = |k| q_power(k, 2);
    let neg = |x: LaurentScalar| -x;
    [
        vec![
            term(q(0), &[1, 2], &[3, 4], 4),
            term(neg(q(1)), &[1, 3], &[2, 4], 4),
            term(q(2), &[1, 4], &[2, 3], 4),
        ],
        vec![
            term(q(0), &[3, 4], &[1, 2], 4),
            term(neg(q(-1)), &[2, 4], &[1, 3], 4),
            term(q(-2), &[2, 3], &[1, 4], 4),
        ],
    ]
}

/// The commutation identities, both Plücker forms and the derived identity for
/// `[13][24]` in `G(2,4)`, each checked as a canonical-form zero.
pub fn verify_relation_table() -> Result<Report> {
    let (m, n) = (2, 4);
    let q = |k| q_power(k, m);
    let one = LaurentScalar::one;
    let mut identities: Vec<(String, Vec<RelationTerm>)> = Vec::new();
    for (i, j, k) in itertools::iproduct!(1..=4usize, 1..=4usize, 1..=4usize) {
        if i < j && j < k {
            identities.push((
                format!("[{i}{j}][{i}{k}] = q[{i}{k}][{i}{j}]"),
                vec![term(one(), &[i, j], &[i, k], n), term(-q(1), &[i, k], &[i, j], n)],
            ));
            identities.push((
                format!("[{i}{k}][{j}{k}] = q[{j}{k}][{i}{k}]"),
                vec![term(one(), &[i, k], &[j, k], n), term(-q(1), &[j, k], &[i, k], n)],
            ));
        }
    }
    identities.push((
        "[14][23] = [23][14]".into(),
        vec![term(one(), &[1, 4], &[2, 3], n), term(-one(), &[2, 3], &[1, 4], n)],
    ));
    identities.push((
        "[12][34] = q^2[34][12]".into(),
        vec![term(one(), &[1, 2], &[3, 4], n), term(-q(2), &[3, 4], &[1, 2], n)],
    ));
    identities.push((
        "[13][24] = [24][13] + (q - q^-1)[14][23]".into(),
        vec![
            term(one(), &[1, 3], &[2, 4], n),
            term(-one(), &[2, 4], &[1, 3], n),
            term(-(q(1) - q(-1)), &[1, 4], &[2, 3], n),
        ],
    ));
    let [first, second] = plucker_forms();
    identities.push(("[12][34] - q[13][24] + q^2[14][23] = 0".into(), first));
    identities.push(("[34][12] - q^-1[24][13] + q^-2[23][14] = 0".into(), second));
    identities.push((
        "[13][24] = q^2[24][13] + (q^-1 - q)[12][34]".into(),
        vec![
            term(one(), &[1, 3], &[2, 4], n),
            term(-q(2), &[2, 4], &[1, 3], n),
            term(-(q(-1) - q(1)), &[1, 2], &[3, 4], n),
        ],
    ));
    let mut report = Report::new();
    for (name, terms) in identities {
        let value = evaluate_terms(m, n, &terms)?;
        report.push(Check::expect(
            "g24-relation",
            json!({ "m": m, "n": n, "identity": name }),
            value.is_zero(),
            || format!("residual {value}"),
        ));
    }
    Ok(report)
}

/// `[ij][kl] - q[ik][jl] + q^2[il][jk] = 0` for every `i<j<k<l` in `G(2,n)`.
pub fn verify_three_term_plucker(n: usize) -> Result<Report> {
    let q = |k| q_power(k, 2);
    let mut report = Report::new();
    for quad in IndexSet::all(4, n) {
        let [i, j, k, l] = [quad.elems()[0], quad.elems()[1], quad.elems()[2], quad.elems()[3]];
        let terms = vec![
            term(q(0), &[i, j], &[k, l], n),
            term(-q(1), &[i, k], &[j, l], n),
            term(q(2), &[i, l], &[j, k], n),
        ];
        let value = evaluate_terms(2, n, &terms)?;
        report.push(Check::expect(
            "three-term-plucker",
            json!({ "m": 2, "n": n, "columns": quad }),
            value.is_zero(),
            || format!("residual {value}"),
        ));
    }
    Ok(report)
}

/// `[23][14] - q[24][13] + q^2[12][34]` in `O_q(G(2,4))`: the image of the
/// Plücker relation under naive column cycling.
pub fn nonautomorphism_witness() -> NCPoly {
    let [first, _] = plucker_forms();
    naive_cycle_terms(&first)
        .and_then(|t| evaluate_terms(2, 4, &t))
        .expect("G(2,4) literals are valid")
}

fn naive_cycle_terms(terms: &[RelationTerm]) -> Result<Vec<RelationTerm>> {
    Ok(terms
        .iter()
        .map(|t| RelationTerm::new(t.coeff.clone(), cycle_index_set(&t.left).0, cycle_index_set(&t.right).0))
        .collect())
}

/// Value of a relation after cycling its index sets with no scalar corrections.
pub fn naive_cycle_image(r: &QuadraticRelation) -> Result<NCPoly> {
    evaluate_terms(r.m, r.n, &naive_cycle_terms(&r.terms)?)
}

/// The witness is nonzero and equals `(q^4 - q^2)[34][12]`, i.e. its difference
/// against the second Plücker form (which vanishes) is the contradiction term.
pub fn verify_nonautomorphism() -> Result<Report> {
    let (m, n) = (2, 4);
    let q = |k| q_power(k, m);
    let witness = nonautomorphism_witness();
    let mut report = Report::new();
    let params = json!({ "m": m, "n": n });
    report.push(Check::expect(
        "plucker-witness-nonzero",
        params.clone(),
        !witness.is_zero(),
        || "witness is zero".into(),
    ));
    if !witness.is_zero() {
        report.push(Check::ok_with(
            "plucker-witness-value",
            params.clone(),
            witness.to_string(),
        ));
    }
    let [first, second] = plucker_forms();
    report.push(Check::expect(
        "plucker-relation-vanishes",
        params.clone(),
        evaluate_terms(m, n, &first)?.is_zero(),
        || "first Plücker form does not vanish".into(),
    ));
    // q^2 times the second form: [23][14] - q[24][13] + q^2[34][12].
    let valid: Vec<RelationTerm> = second
        .iter()
        .map(|t| RelationTerm::new(&t.coeff * &q(2), t.left.clone(), t.right.clone()))
        .collect();
    let valid_value = evaluate_terms(m, n, &valid)?;
    let contradiction =
        (&maximal_minor(&s(&[3, 4], n), m, n)? * &maximal_minor(&s(&[1, 2], n), m, n)?).scale(&(q(4) - q(2)));
    let difference = &witness - &valid_value;
    report.push(Check::expect(
        "plucker-witness-contradiction-term",
        params.clone(),
        valid_value.is_zero() && difference == contradiction,
        || format!("difference {difference}; expected {contradiction}"),
    ));
    report.push(Check::expect(
        "witness-times-zero",
        params,
        witness.scale(&LaurentScalar::zero()).is_zero(),
        || "scaling by zero is nonzero".into(),
    ));
    Ok(report)
}

/// Every discovered relation is checked under naive cycling; at least one
/// must fail for cycling not to be an automorphism.
pub fn naive_cycling_failures(m: usize, n: usize) -> Result<Vec<(QuadraticRelation, NCPoly)>> {
    let mut out = Vec::new();
    for r in quadratic_relations(m, n)? {
        let img = naive_cycle_image(&r)?;
        if !img.is_zero() {
            out.push((r, img));
        }
    }
    Ok(out)
}

/// `sum c_s [I_s ⊔ P̄][J_s ⊔ P̄] = 0` in `G(m + |P̄|, n')`, where `p` lives in
/// `1..=n'` (`n' >= n`) and must contain every index used by `r`.
pub fn muir_extend(r: &QuadraticRelation, p: &IndexSet) -> Result<QuadraticRelation> {
    let n = p.ambient();
    if n < r.n {
        return Err(Error::PrereqViolation(format!(
            "P lives in 1..={n} but the relation in 1..={}",
            r.n
        )));
    }
    let support = r.support().with_ambient(n)?;
    if !support.is_subset(p) {
        return Err(Error::PrereqViolation(format!(
            "P = {p} does not contain the indices {support}"
        )));
    }
    let extra = p.complement();
    let m2 = r.m + extra.len();
    if m2 >= n {
        return Err(Error::PrereqViolation(format!(
            "extended grassmannian G({m2},{n}) is degenerate"
        )));
    }
    let terms = r
        .terms
        .iter()
        .map(|t| {
            let coeff = t
                .coeff
                .rescale(r.m as i64, m2 as i64)
                .ok_or_else(|| Error::PrereqViolation(format!("coefficient {} is not a q-polynomial", t.coeff)))?;
            Ok(RelationTerm::new(
                coeff,
                t.left.with_ambient(n)?.union(&extra),
                t.right.with_ambient(n)?.union(&extra),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    QuadraticRelation::new(m2, n, terms)
}

/// Extends every relation of `G(m,n)` to `G(m+1,n+1)` through `P = {1..n}`.
pub fn verify_muir_extension(m: usize, n: usize) -> Result<Report> {
    let mut report = Report::new();
    let p = IndexSet::initial(n, n + 1);
    for (k, r) in quadratic_relations(m, n)?.iter().enumerate() {
        let params = json!({ "from": [m, n], "to": [m + 1, n + 1], "relation": k, "P": p });
        report.push(match muir_extend(r, &p) {
            Ok(ext) => Check::ok_with("muir-extension", params, ext.to_string()),
            Err(e) => Check::fail("muir-extension", params, format!("{r}: {e}")),
        });
    }
    Ok(report)
}

/// `[1][3] = q[3][1]` in `G(1,4)` extended through `P = {1,3}` to `G(3,4)`.
pub fn verify_muir_row_example() -> Result<Report> {
    let row = QuadraticRelation::new(
        1,
        4,
        vec![
            RelationTerm::new(LaurentScalar::one(), s(&[1], 4), s(&[3], 4)),
            RelationTerm::new(-q_power(1, 1), s(&[3], 4), s(&[1], 4)),
        ],
    )?;
    let p = s(&[1, 3], 4);
    let params = json!({ "from": [1, 4], "to": [3, 4], "P": p });
    let check = match muir_extend(&row, &p) {
        Ok(ext) => {
            let expected = [s(&[1, 2, 4], 4), s(&[2, 3, 4], 4)];
            let shape = ext.terms()[0].left == expected[0] && ext.terms()[0].right == expected[1];
            Check::expect("muir-row-example", params, shape, || {
                format!("unexpected extension {ext}")
            })
        }
        Err(e) => Check::fail("muir-row-example", params, e.to_string()),
    };
    Ok(Report::from_iter([check]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(k: i64) -> LaurentScalar {
        q_power(k, 2)
    }

    #[test]
    fn relation_table_holds() {
        let report = verify_relation_table().unwrap();
        assert!(report.all_ok(), "{:?}", report.failures().collect::<Vec<_>>());
        // 8 commutation identities, [14][23], [12][34], [13][24], two Plücker forms, derived identity
        assert_eq!(report.len(), 8 + 1 + 1 + 1 + 2 + 1);
    }

    #[test]
    fn discovered_relations_vanish_and_contain_plucker() {
        let rels = quadratic_relations(2, 4).unwrap();
        for r in &rels {
            assert!(evaluate_terms(2, 4, r.terms()).unwrap().is_zero());
        }
        let [first, second] = plucker_forms();
        assert!(relation_in_span(&rels, &first, 2, 4));
        assert!(relation_in_span(&rels, &second, 2, 4));
        // a non-relation is not in the span
        let bogus = vec![term(q(0), &[1, 2], &[3, 4], 4), term(-q(0), &[3, 4], &[1, 2], 4)];
        assert!(!relation_in_span(&rels, &bogus, 2, 4));
    }

    #[test]
    fn relation_count_matches_hilbert_function() {
        // dim of degree two of O_q(G(2,4)) is 20 (semistandard 2x2 tableaux in
        // 4 letters), so 36 products carry 16 independent relations.
        assert_eq!(quadratic_relations(2, 4).unwrap().len(), 36 - 20);
    }

    #[test]
    fn row_relations_of_g1n() {
        let rels = quadratic_relations(1, 3).unwrap();
        for i in 1..=3 {
            for j in i + 1..=3 {
                let cand = vec![term(q_power(0, 1), &[i], &[j], 3), term(-q_power(1, 1), &[j], &[i], 3)];
                assert!(relation_in_span(&rels, &cand, 1, 3));
            }
        }
    }

    #[test]
    fn constructor_rejects_non_relations() {
        let err = QuadraticRelation::new(
            2,
            4,
            vec![term(q(0), &[1, 3], &[2, 4], 4), term(-q(0), &[2, 4], &[1, 3], 4)],
        );
        assert!(matches!(err, Err(Error::NotARelation(_))));
    }

    #[test]
    fn witness_is_nonzero() {
        assert!(!nonautomorphism_witness().is_zero());
        assert!(verify_nonautomorphism().unwrap().all_ok());
        assert!(!naive_cycling_failures(2, 4).unwrap().is_empty());
    }

    #[test]
    fn muir_examples() {
        let row = QuadraticRelation::new(
            1,
            4,
            vec![
                RelationTerm::new(LaurentScalar::one(), s(&[1], 4), s(&[3], 4)),
                RelationTerm::new(-q_power(1, 1), s(&[3], 4), s(&[1], 4)),
            ],
        )
        .unwrap();
        let ext = muir_extend(&row, &s(&[1, 3], 4)).unwrap();
        assert_eq!(ext.ambient(), (3, 4));
        assert_eq!(ext.terms()[0].left, s(&[1, 2, 4], 4));
        assert_eq!(ext.terms()[0].right, s(&[2, 3, 4], 4));
        assert_eq!(ext.terms()[1].coeff, -q_power(1, 3));

        let [first, _] = plucker_forms();
        let plucker = QuadraticRelation::new(2, 4, first).unwrap();
        let ext = muir_extend(&plucker, &IndexSet::initial(4, 5)).unwrap();
        assert_eq!(ext.ambient(), (3, 5));

        // empty complement: unchanged
        let same = muir_extend(&plucker, &IndexSet::initial(4, 4)).unwrap();
        assert_eq!(same, plucker);

        assert!(matches!(
            muir_extend(&plucker, &s(&[1, 2, 3], 4)),
            Err(Error::PrereqViolation(_))
        ));
    }

    #[test]
    fn muir_reports() {
        assert!(verify_muir_extension(2, 4).unwrap().all_ok());
        assert!(verify_muir_extension(1, 3).unwrap().all_ok());
        assert!(verify_muir_row_example().unwrap().all_ok());
    }

    #[test]
    fn three_term_plucker_in_g25() {
        assert!(verify_three_term_plucker(5).unwrap().all_ok());
    }
}
