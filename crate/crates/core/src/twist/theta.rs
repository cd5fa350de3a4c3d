//! Column cycling as an isomorphism `theta: T(O_q(G(m,n))) -> O_q(G(m,n))`.
//!
//! The route goes through the dehomogenisations at `M_1` and `M_2`: the twisted
//! generators `x'_ij, y'` of the first satisfy the same relations as
//! `z_ij, y_2` of the second.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::json;

use crate::error::{Error, Result};
use crate::grass::dehom::{dehom_x, phi_of_minor, rho_any};
use crate::grass::localize::{Localization, LocalizedElement};
use crate::grass::relations::{
    naive_cycle_image, plucker_forms, quadratic_relations_from, MinorTable, QuadraticRelation,
};
use crate::linalg::{kernel_basis, ScalarMatrix};
use crate::minors::{cycle_index_set, minor_content, IndexPair, IndexSet};
use crate::model::{check_qmatrix_relations, minor_in, Model};
use crate::qmatrix::{NCPoly, Word};
use crate::report::{Check, Report};
use crate::scalar::{p_power, q_power, LaurentScalar};
use crate::twist::cocycle::Cocycle;
use crate::twist::twisted::{TwistModel, TwistedElement};

/// The x-model at `M_1`, its twist, and the z-model at `M_2`.
#[derive(Debug, Clone)]
pub struct Models {
    pub x: Localization,
    pub twisted: TwistModel,
    pub z: Localization,
}

impl Models {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let x = Localization::new(m, n, 1)?;
        let z = Localization::new(m, n, 2)?;
        Ok(Self {
            twisted: TwistModel::local(x.clone()),
            x,
            z,
        })
    }

    pub fn ambient(&self) -> (usize, usize) {
        self.x.ambient()
    }

    pub fn x_prime(&self, i: usize, j: usize) -> Result<TwistedElement> {
        self.twisted.twist_local(dehom_x(&self.x, i, j)?)
    }

    pub fn y_prime(&self) -> TwistedElement {
        self.twisted.twist_local(self.x.y()).expect("y lives in the x-model")
    }
}

fn params(m: usize, n: usize) -> serde_json::Value {
    json!({ "m": m, "n": n })
}

fn push_result(report: &mut Report, name: &str, params: serde_json::Value, r: Result<(bool, String)>) {
    report.push(match r {
        Ok((true, w)) if w.is_empty() => Check::ok(name, params),
        Ok((true, w)) => Check::ok_with(name, params, w),
        Ok((false, w)) => Check::fail(name, params, w),
        Err(e) => Check::fail(name, params, e.to_string()),
    });
}

/// Generator cocycle values at `(m,n)`: `p^-1` between two last-column `x`s,
/// `q^2` for a last-column `x` against `y`, and `1` otherwise.
pub fn verify_cocycle_table(m: usize, n: usize) -> Result<Report> {
    let loc = Localization::new(m, n, 1)?;
    let cocycle = Cocycle::new(n);
    let last = n - m;
    let mut gens = Vec::new();
    for i in 1..=m {
        for j in 1..=last {
            gens.push((format!("x{i}{j}"), Some(j), loc.content(&dehom_x(&loc, i, j)?)?));
        }
    }
    gens.push(("y".to_string(), None, loc.content(&loc.y())?));
    let mut report = Report::new();
    for (a, ja, sa) in &gens {
        for (b, jb, sb) in &gens {
            let expected = match (ja, jb) {
                (Some(j), Some(l)) if *j == last && *l == last => p_power(-1),
                (Some(j), None) if *j == last => q_power(2, m),
                _ => LaurentScalar::one(),
            };
            let value = cocycle.value(sa, sb)?;
            report.push(Check::expect(
                "cocycle-value",
                json!({ "m": m, "n": n, "a": a, "b": b, "value": value }),
                value == expected,
                || format!("expected {expected}"),
            ));
        }
    }
    Ok(report)
}

/// Quantum-matrix relations among the `x'_ij` under the twisted product, and
/// `y' x'_ij = q^(+-1) x'_ij y'` with `-1` exactly in the last column.
pub fn verify_twisted_qmatrix(m: usize, n: usize) -> Result<Report> {
    let models = Models::new(m, n)?;
    let tm = &models.twisted;
    let mut report = check_qmatrix_relations(tm, "x'", m, n - m, |i, j| models.x_prime(i, j))?;
    for c in &mut report.checks {
        c.params["m"] = json!(m);
        c.params["n"] = json!(n);
    }
    let y = models.y_prime();
    for i in 1..=m {
        for j in 1..=n - m {
            let e = if j == n - m { -1 } else { 1 };
            let outcome = (|| {
                let x = models.x_prime(i, j)?;
                let lhs = tm.twisted_mul(&y, &x)?;
                let rhs = tm.scale(&tm.twisted_mul(&x, &y)?, &q_power(e, m));
                Ok((tm.eq(&lhs, &rhs)?, format!("y' x'{i}{j} vs q^{e} x'{i}{j} y'")))
            })();
            push_result(
                &mut report,
                "twisted-y-relation",
                json!({ "m": m, "n": n, "i": i, "j": j, "exponent": e }),
                outcome,
            );
        }
    }
    Ok(report)
}

/// How two generators `a, b` relate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationShape {
    /// `ab = lambda ba`
    Quasi(LaurentScalar),
    /// `ab - ba = lambda x_il x_kj`
    Correction(LaurentScalar),
    /// neither form applies
    Unrelated,
}

impl fmt::Display for RelationShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationShape::Quasi(l) => write!(f, "ab = ({l}) ba"),
            RelationShape::Correction(l) => write!(f, "ab - ba = ({l}) x_il x_kj"),
            RelationShape::Unrelated => f.write_str("unrelated"),
        }
    }
}

/// Generator `k` of an `m x (n-m)` matrix followed by `y`; `None` stands for `y`.
fn generator_labels(m: usize, cols: usize) -> Vec<Option<(usize, usize)>> {
    let mut out: Vec<_> = (1..=m).flat_map(|i| (1..=cols).map(move |j| Some((i, j)))).collect();
    out.push(None);
    out
}

fn relation_shapes<M: Model>(
    model: &M,
    m: usize,
    cols: usize,
    gen: impl Fn(Option<(usize, usize)>) -> Result<M::Elem>,
) -> Result<Vec<(String, RelationShape)>> {
    let labels = generator_labels(m, cols);
    let gens = labels.iter().map(|&l| gen(l)).collect::<Result<Vec<_>>>()?;
    let name = |l: Option<(usize, usize)>| l.map_or("y".to_string(), |(i, j)| format!("{i}{j}"));
    let mut out = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            let ab = model.mul(&gens[a], &gens[b])?;
            let ba = model.mul(&gens[b], &gens[a])?;
            let shape = if let Some(l) = model.ratio(&ab, &ba)? {
                RelationShape::Quasi(l)
            } else {
                match (labels[a], labels[b]) {
                    (Some((i, j)), Some((k, l))) if i < k && j < l => {
                        let corr = model.mul(&gen(Some((i, l)))?, &gen(Some((k, j)))?)?;
                        match model.ratio(&model.sub(&ab, &ba)?, &corr)? {
                            Some(l) => RelationShape::Correction(l),
                            None => RelationShape::Unrelated,
                        }
                    }
                    _ => RelationShape::Unrelated,
                }
            };
            out.push((format!("{} {}", name(labels[a]), name(labels[b])), shape));
        }
    }
    Ok(out)
}

/// Pairwise relation shapes of `{x'_ij, y'}` (twisted) and `{z_ij, y_2}` agree.
pub fn verify_z_model(m: usize, n: usize) -> Result<Report> {
    let models = Models::new(m, n)?;
    let cols = n - m;
    let twisted = relation_shapes(&models.twisted, m, cols, |l| match l {
        Some((i, j)) => models.x_prime(i, j),
        None => Ok(models.y_prime()),
    })?;
    let z = relation_shapes(&models.z, m, cols, |l| match l {
        Some((i, j)) => dehom_x(&models.z, i, j),
        None => Ok(models.z.y()),
    })?;
    let mut report = Report::new();
    for ((pair, s), (_, t)) in twisted.iter().zip(&z) {
        let ok = s == t && *s != RelationShape::Unrelated;
        report.push(Check::expect(
            "z-model-relation",
            json!({ "m": m, "n": n, "pair": pair }),
            ok,
            || format!("twisted: {s}; z-model: {t}"),
        ));
    }
    Ok(report)
}

/// `[I|J]` over the `x'` under the twisted product, provided it equals the
/// twist-map image of `[I|J]` over the `x`; `None` if they differ.
pub fn twist_of_minor(models: &Models, rows: &IndexSet, cols: &IndexSet) -> Result<Option<TwistedElement>> {
    let pair = IndexPair::new(rows.clone(), cols.clone())?;
    let twisted = minor_in(&models.twisted, &pair, |i, j| models.x_prime(i, j))?;
    let plain = minor_in(&models.x, &pair, |i, j| dehom_x(&models.x, i, j))?;
    let image = models.twisted.twist_local(plain)?;
    Ok(models.twisted.eq(&twisted, &image)?.then_some(twisted))
}

/// `c(content [I|J]_x, content y)`.
pub fn minor_y_cocycle(models: &Models, rows: &IndexSet, cols: &IndexSet) -> Result<LaurentScalar> {
    let (_, n) = models.ambient();
    let minor = rho_any(&models.x, rows, cols)?;
    let s = models.x.content(&minor)?;
    let t = models.x.content(&models.x.y())?;
    Cocycle::new(n).value(&s, &t)
}

/// Every `x`-minor: `twist_of_minor` agrees and `minor_y_cocycle` is `q^2`
/// exactly when the last column is used.
pub fn verify_twisted_minors(m: usize, n: usize) -> Result<Report> {
    let models = Models::new(m, n)?;
    let mut report = Report::new();
    for k in 0..=m {
        for rows in IndexSet::all(k, m) {
            for cols in IndexSet::all(k, n - m) {
                let p = json!({ "m": m, "n": n, "rows": rows, "cols": cols });
                if k > 0 {
                    let outcome = twist_of_minor(&models, &rows, &cols).map(|v| (v.is_some(), String::new()));
                    push_result(&mut report, "twist-of-minor", p.clone(), outcome);
                }
                let expected = if cols.contains(n - m) {
                    q_power(2, m)
                } else {
                    LaurentScalar::one()
                };
                let outcome = minor_y_cocycle(&models, &rows, &cols).map(|c| (c == expected, format!("c = {c}")));
                push_result(&mut report, "minor-y-cocycle", p, outcome);
            }
        }
    }
    Ok(report)
}

/// `theta([J]') = lambda [J + 1]` with `lambda = q^-2` when `n` is in `J`.
pub fn theta_minor(set: &IndexSet, m: usize) -> Result<(IndexSet, LaurentScalar)> {
    if set.len() != m {
        return Err(Error::WrongCardinality {
            expected: m,
            got: set.len(),
        });
    }
    let (cycled, crossed) = cycle_index_set(set);
    let lambda = if crossed { q_power(-2, m) } else { LaurentScalar::one() };
    Ok((cycled, lambda))
}

/// Result of `rho_2 theta T phi_1([I])`.
#[derive(Debug, Clone)]
pub struct CompositeImage {
    pub minor: IndexSet,
    pub scalar: LaurentScalar,
    pub value: LocalizedElement,
}

/// Evaluates `rho_2 theta T phi_1([I])` one arrow at a time and compares with
/// `lambda [I + 1]`.
pub fn verify_composite(models: &Models, set: &IndexSet) -> Result<(bool, CompositeImage)> {
    let (m, _) = models.ambient();
    let (x, z, tm) = (&models.x, &models.z, &models.twisted);
    // phi_1: [I] = [R|C]_x y
    let phi = phi_of_minor(x, set)?;
    let x_minor = if phi.rows.is_empty() {
        x.unit()
    } else {
        let pair = IndexPair::new(phi.rows.clone(), phi.cols.clone())?;
        minor_in(x, &pair, |i, j| dehom_x(x, i, j))?
    };
    if !x.eq(&x.mul(&x_minor, &x.y())?, &x.minor(set)?)? {
        return Err(Error::NotARelation(format!("phi_1({set}) does not multiply back")));
    }
    // T: ([R|C] y)' = C^-1 [R|C]' y'
    let c = minor_y_cocycle(models, &phi.rows, &phi.cols)?;
    let c_inv = c.inverse_unit().ok_or(Error::ZeroDivisor)?;
    let lhs = tm.twisted_mul(&tm.twist_local(x_minor.clone())?, &models.y_prime())?;
    let rhs = tm.scale(&tm.twist_local(x.mul(&x_minor, &x.y())?)?, &c);
    if !tm.eq(&lhs, &rhs)? {
        return Err(Error::NotARelation(format!(
            "twist of phi_1({set}) has the wrong cocycle factor"
        )));
    }
    // theta: x'_ij -> z_ij, y' -> y_2
    let z_minor = if phi.rows.is_empty() {
        z.unit()
    } else {
        let pair = IndexPair::new(phi.rows.clone(), phi.cols.clone())?;
        minor_in(z, &pair, |i, j| dehom_x(z, i, j))?
    };
    // rho_2 identifies [R|C]_z with the localized minor
    if !z.eq(&z_minor, &rho_any(z, &phi.rows, &phi.cols)?)? {
        return Err(Error::NotARelation(format!(
            "[{}|{}]_z differs from rho_2",
            phi.rows, phi.cols
        )));
    }
    let value = z.scale(&z.mul(&z_minor, &z.y())?, &c_inv);
    let (cycled, lambda) = theta_minor(set, m)?;
    let target = z.scale(&z.minor(&cycled)?, &lambda);
    let ok = c_inv == lambda && z.eq(&value, &target)?;
    Ok((
        ok,
        CompositeImage {
            minor: cycled,
            scalar: c_inv,
            value,
        },
    ))
}

pub fn verify_composite_all(m: usize, n: usize) -> Result<Report> {
    let models = Models::new(m, n)?;
    let mut report = Report::new();
    for set in IndexSet::all(m, n) {
        let p = json!({ "m": m, "n": n, "minor": set });
        let outcome = verify_composite(&models, &set).map(|(ok, img)| (ok, format!("({}) {}", img.scalar, img.minor)));
        push_result(&mut report, "composite", p, outcome);
    }
    Ok(report)
}

fn theta_scalar(table_m: usize, set: &IndexSet) -> LaurentScalar {
    theta_minor(set, table_m).expect("maximal minor").1
}

/// `sum a_s c(I_s, J_s)^-1 lambda_I lambda_J [I_s + 1][J_s + 1]`.
pub fn transport_relation(table: &MinorTable, r: &QuadraticRelation) -> Result<NCPoly> {
    let (m, n) = table.ambient();
    let cocycle = Cocycle::new(n);
    let mut acc = NCPoly::zero(m, n);
    for t in r.terms() {
        let c_inv = cocycle.inverse_value(&minor_content(&t.left), &minor_content(&t.right))?;
        let scalar = &(&t.coeff * &c_inv) * &(&theta_scalar(m, &t.left) * &theta_scalar(m, &t.right));
        let prod = table.product(&cycle_index_set(&t.left).0, &cycle_index_set(&t.right).0)?;
        acc = &acc + &prod.scale(&scalar);
    }
    Ok(acc)
}

/// `theta(([I][J])') = c(I,J)^-1 theta([I]') theta([J]')` on the image side.
fn theta_of_product(table: &MinorTable, cocycle: &Cocycle, a: &IndexSet, b: &IndexSet) -> Result<NCPoly> {
    let (m, _) = table.ambient();
    let c_inv = cocycle.inverse_value(&minor_content(a), &minor_content(b))?;
    let prod = table.product(&cycle_index_set(a).0, &cycle_index_set(b).0)?;
    Ok(prod.scale(&(&c_inv * &(&theta_scalar(m, a) * &theta_scalar(m, b)))))
}

/// Every discovered relation transports to zero, and `theta`, extended
/// linearly from a basis of products in each content block, is multiplicative
/// on every generator pair.
pub fn verify_theta_transport(m: usize, n: usize) -> Result<Report> {
    let table = MinorTable::new(m, n)?;
    let cocycle = Cocycle::new(n);
    let mut report = Report::new();
    for (k, r) in quadratic_relations_from(&table)?.iter().enumerate() {
        let outcome = transport_relation(&table, r).map(|v| {
            (
                v.is_zero(),
                if v.is_zero() {
                    String::new()
                } else {
                    format!("{r} -> {v}")
                },
            )
        });
        push_result(
            &mut report,
            "theta-relation",
            json!({ "m": m, "n": n, "relation": k }),
            outcome,
        );
    }
    for (content, pairs) in table.pairs_by_content() {
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
        let column = |p: &NCPoly| p.coefficients_over(&words).expect("word basis covers the block");
        let mut full = ScalarMatrix::zeros(words.len(), pairs.len());
        for (c, p) in products.iter().enumerate() {
            for (r, v) in column(p).into_iter().enumerate() {
                full[(r, c)] = v;
            }
        }
        let basis = full.pivot_columns();
        let basis_images = basis
            .iter()
            .map(|&b| theta_of_product(&table, &cocycle, &pairs[b].0, &pairs[b].1))
            .collect::<Result<Vec<_>>>()?;
        for (idx, (a, b)) in pairs.iter().enumerate() {
            let p = json!({ "m": m, "n": n, "content": content.to_string(), "left": a, "right": b });
            let outcome = (|| {
                let mut mat = ScalarMatrix::zeros(words.len(), basis.len() + 1);
                for (c, &bi) in basis.iter().chain(std::iter::once(&idx)).enumerate() {
                    for (r, v) in column(products[bi]).into_iter().enumerate() {
                        mat[(r, c)] = v;
                    }
                }
                let kernel = kernel_basis(&mat);
                let [d] = kernel.as_slice() else {
                    return Ok((false, format!("expansion space has dimension {}", kernel.len())));
                };
                let d_p = &d[basis.len()];
                if d_p.is_zero() {
                    return Ok((false, "product is not in the span of the basis".to_string()));
                }
                // d_P theta([I]') theta([J]') + c(I,J) sum_b d_b theta(B_b') = 0
                let (ta, la) = theta_minor(a, m)?;
                let (tb, lb) = theta_minor(b, m)?;
                let direct = table.product(&ta, &tb)?.scale(&(&la * &lb));
                let c = cocycle.value(&minor_content(a), &minor_content(b))?;
                let mut acc = direct.scale(d_p);
                for (img, d_b) in basis_images.iter().zip(d) {
                    acc = &acc + &img.scale(&(&c * d_b));
                }
                Ok((
                    acc.is_zero(),
                    if acc.is_zero() {
                        String::new()
                    } else {
                        format!("defect {acc}")
                    },
                ))
            })();
            push_result(&mut report, "theta-multiplicative", p, outcome);
        }
    }
    if (m, n) == (2, 4) {
        let [first, _] = plucker_forms();
        let plucker = QuadraticRelation::new(2, 4, first)?;
        let transported = transport_relation(&table, &plucker)?;
        let naive = naive_cycle_image(&plucker)?;
        report.push(Check::expect(
            "theta-plucker-contrast",
            params(m, n),
            transported.is_zero() && !naive.is_zero(),
            || format!("transported {transported}; naive {naive}"),
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> IndexSet {
        IndexSet::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn theta_minor_examples() {
        assert_eq!(
            theta_minor(&set(&[1, 2], 4), 2).unwrap(),
            (set(&[2, 3], 4), LaurentScalar::one())
        );
        assert_eq!(
            theta_minor(&set(&[2, 4], 4), 2).unwrap(),
            (set(&[1, 3], 4), q_power(-2, 2))
        );
        assert_eq!(
            theta_minor(&set(&[1, 4], 4), 2).unwrap(),
            (set(&[1, 2], 4), q_power(-2, 2))
        );
        assert!(matches!(
            theta_minor(&set(&[1], 4), 2),
            Err(Error::WrongCardinality { .. })
        ));
    }

    #[test]
    fn theta_has_order_n_with_total_scalar() {
        for (m, n) in [(2, 4), (2, 5), (3, 6)] {
            for s in IndexSet::all(m, n) {
                let mut cur = s.clone();
                let mut total = LaurentScalar::one();
                for _ in 0..n {
                    let (next, l) = theta_minor(&cur, m).unwrap();
                    total = &total * &l;
                    cur = next;
                }
                assert_eq!(cur, s);
                assert_eq!(total, q_power(-2 * m as i64, m));
            }
        }
    }

    #[test]
    fn cocycle_table_two_four() {
        assert!(verify_cocycle_table(2, 4).unwrap().all_ok());
    }

    #[test]
    fn twisted_matrix_and_z_model_two_four() {
        assert!(verify_twisted_qmatrix(2, 4).unwrap().all_ok());
        let z = verify_z_model(2, 4).unwrap();
        assert!(z.all_ok(), "{:?}", z.failures().next());
        assert!(verify_twisted_minors(2, 4).unwrap().all_ok());
    }

    #[test]
    fn composite_scalars_two_four() {
        let models = Models::new(2, 4).unwrap();
        let mut scalars = Vec::new();
        for s in IndexSet::all(2, 4) {
            let (ok, img) = verify_composite(&models, &s).unwrap();
            assert!(ok, "{s}");
            scalars.push(img.scalar);
        }
        let one = LaurentScalar::one();
        let qm2 = q_power(-2, 2);
        assert_eq!(
            scalars,
            vec![one.clone(), one.clone(), qm2.clone(), one, qm2.clone(), qm2]
        );
        let (_, img) = verify_composite(&models, &set(&[1, 3], 4)).unwrap();
        assert_eq!(img.minor, set(&[2, 4], 4));
    }

    #[test]
    fn transport_two_four() {
        let report = verify_theta_transport(2, 4).unwrap();
        assert!(report.all_ok(), "{:?}", report.failures().next());
    }

    #[test]
    fn naive_transport_fails() {
        // dropping the cocycle and lambda factors must break at least one relation
        let table = MinorTable::new(2, 4).unwrap();
        let rels = quadratic_relations_from(&table).unwrap();
        assert!(rels.iter().any(|r| !naive_cycle_image(r).unwrap().is_zero()));
    }
}
