//! A minimal algebra interface shared by the plain, localized and twisted models,
//! so that quantum-matrix relation checks and minor expansions are written once.

use serde_json::json;

use crate::error::Result;
use crate::minors::{for_each_permutation, IndexPair};
use crate::report::{Check, Report};
use crate::scalar::LaurentScalar;

pub trait Model {
    type Elem: Clone + std::fmt::Display;

    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, lambda: &LaurentScalar) -> Self::Elem;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool>;
    /// The scalar `lambda` with `a = lambda * b`, if any; `b` must be nonzero.
    fn ratio(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<LaurentScalar>>;
    /// `q^k` for this model's row count.
    fn q(&self, k: i64) -> LaurentScalar;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.add(a, &self.scale(b, &LaurentScalar::from_int(-1)))
    }

    fn mul_all<'a, I>(&self, factors: I) -> Result<Self::Elem>
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }
}

/// `[I|J]` evaluated as a permutation sum over the generators `gen(i, j)`.
pub fn minor_in<M: Model>(
    model: &M,
    pair: &IndexPair,
    gen: impl Fn(usize, usize) -> Result<M::Elem>,
) -> Result<M::Elem> {
    let rows = pair.rows.elems();
    let cols = pair.cols.elems();
    let mut acc: Option<M::Elem> = None;
    let mut err = None;
    for_each_permutation(rows.len(), |perm, len| {
        if err.is_some() {
            return;
        }
        let step = (|| {
            let factors = perm
                .iter()
                .zip(cols)
                .map(|(&s, &c)| gen(rows[s], c))
                .collect::<Result<Vec<_>>>()?;
            let word = model.mul_all(&factors)?;
            let sign = if len % 2 == 0 { 1 } else { -1 };
            let coeff = &LaurentScalar::from_int(sign) * &model.q(len as i64);
            let term = model.scale(&word, &coeff);
            match acc.take() {
                None => Ok(term),
                Some(a) => model.add(&a, &term),
            }
        })();
        match step {
            Ok(v) => acc = Some(v),
            Err(e) => err = Some(e),
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(acc.unwrap_or_else(|| model.one()))
}

/// Checks the four defining relation families of `O_q(M_{rows,cols})` among
/// `gen(i, j)`, one report entry per relation instance.
pub fn check_qmatrix_relations<M: Model>(
    model: &M,
    label: &str,
    rows: usize,
    cols: usize,
    gen: impl Fn(usize, usize) -> Result<M::Elem>,
) -> Result<Report> {
    let mut gens = Vec::new();
    for i in 1..=rows {
        let mut row = Vec::new();
        for j in 1..=cols {
            row.push(gen(i, j)?);
        }
        gens.push(row);
    }
    let g = |i: usize, j: usize| &gens[i - 1][j - 1];
    let q = model.q(1);
    let mut report = Report::new();
    let mut record =
        |name: &str, i: usize, j: usize, k: usize, l: usize, lhs: Result<M::Elem>, rhs: Result<M::Elem>| {
            let params = json!({ "model": label, "a": [i, j], "b": [k, l] });
            let outcome = lhs.and_then(|lhs| {
                let rhs = rhs?;
                Ok((model.equal(&lhs, &rhs)?, lhs, rhs))
            });
            report.push(match outcome {
                Ok((true, _, _)) => Check::ok(name, params),
                Ok((false, lhs, rhs)) => Check::fail(name, params, format!("lhs = {lhs}; rhs = {rhs}")),
                Err(e) => Check::fail(name, params, e.to_string()),
            });
        };
    for i in 1..=rows {
        for j in 1..=cols {
            for k in 1..=rows {
                for l in 1..=cols {
                    let (a, b) = (g(i, j), g(k, l));
                    if i == k && j < l {
                        let lhs = model.mul(a, b);
                        let rhs = model.mul(b, a).map(|e| model.scale(&e, &q));
                        record("row-relation", i, j, k, l, lhs, rhs);
                    }
                    if j == l && i < k {
                        let lhs = model.mul(a, b);
                        let rhs = model.mul(b, a).map(|e| model.scale(&e, &q));
                        record("column-relation", i, j, k, l, lhs, rhs);
                    }
                    if k < i && j < l {
                        record("commuting-relation", i, j, k, l, model.mul(a, b), model.mul(b, a));
                    }
                    if i < k && j < l {
                        let lhs = model.mul(a, b).and_then(|ab| model.sub(&ab, &model.mul(b, a)?));
                        let rhs = model
                            .mul(g(i, l), g(k, j))
                            .map(|e| model.scale(&e, &q_minus_q_inv_of(model)));
                        record("cross-relation", i, j, k, l, lhs, rhs);
                    }
                }
            }
        }
    }
    Ok(report)
}

fn q_minus_q_inv_of<M: Model>(model: &M) -> LaurentScalar {
    &model.q(1) - &model.q(-1)
}

/// The plain algebra `O_q(M_{m,n})` as a model.
#[derive(Debug, Clone, Copy)]
pub struct QMatrixModel {
    pub m: usize,
    pub n: usize,
}

impl Model for QMatrixModel {
    type Elem = crate::qmatrix::NCPoly;

    fn one(&self) -> Self::Elem {
        crate::qmatrix::NCPoly::one(self.m, self.n)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.try_mul(b)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        a.try_add(b)
    }
    fn scale(&self, a: &Self::Elem, lambda: &LaurentScalar) -> Self::Elem {
        a.scale(lambda)
    }
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool> {
        Ok(a == b)
    }
    fn ratio(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<LaurentScalar>> {
        a.ratio(b)
    }
    fn q(&self, k: i64) -> LaurentScalar {
        crate::scalar::q_power(k, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::{quantum_minor, IndexSet};
    use crate::qmatrix::NCPoly;

    #[test]
    fn generic_minor_matches_direct_minor() {
        let model = QMatrixModel { m: 3, n: 4 };
        for rows in IndexSet::all(2, 3) {
            for cols in IndexSet::all(2, 4) {
                let pair = IndexPair::new(rows.clone(), cols).unwrap();
                let generic = minor_in(&model, &pair, |i, j| NCPoly::generator(3, 4, i, j)).unwrap();
                assert_eq!(generic, quantum_minor(&pair, 3, 4).unwrap());
            }
        }
    }

    #[test]
    fn relation_checker_accepts_generators() {
        let model = QMatrixModel { m: 2, n: 3 };
        let report = check_qmatrix_relations(&model, "X", 2, 3, |i, j| NCPoly::generator(2, 3, i, j)).unwrap();
        assert!(report.all_ok());
        // 6 row + 3 column + 3 commuting + 3 cross
        assert_eq!(report.len(), 15);
    }

    #[test]
    fn relation_checker_transpose_passes_row_reversal_fails() {
        let model = QMatrixModel { m: 3, n: 3 };
        let report = check_qmatrix_relations(&model, "X^T", 2, 2, |i, j| NCPoly::generator(3, 3, j, i)).unwrap();
        assert!(report.all_ok());
        let swapped =
            check_qmatrix_relations(&model, "swapped", 2, 2, |i, j| NCPoly::generator(3, 3, 3 - i, j)).unwrap();
        assert!(!swapped.all_ok());
    }
}
