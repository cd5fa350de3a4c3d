//! Dehomogenisation at `M_alpha`: the elements `x_ij` of the localisation, the
//! inverse map `rho` on quantum-matrix minors, and the minor data of `phi`.

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::grass::localize::{Localization, LocalizedElement};
use crate::minors::{maximal_minor, tilde, IndexPair, IndexSet};
use crate::model::{check_qmatrix_relations, minor_in};
use crate::report::{Check, Report};

fn check_range(what: &str, v: usize, hi: usize) -> Result<()> {
    if v == 0 || v > hi {
        return Err(Error::IndexOutOfRange(format!("{what} = {v} outside 1..={hi}")));
    }
    Ok(())
}

/// Column set of the numerator of `x_ij`:
/// `M_alpha ∪ {tilde(j + alpha + m - 1)} \ {tilde(alpha + m - i)}`.
pub fn dehom_x_set(loc: &Localization, i: usize, j: usize) -> Result<IndexSet> {
    let (m, n) = loc.ambient();
    check_range("i", i, m)?;
    check_range("j", j, n - m)?;
    let a = loc.alpha() as i64;
    let (m_, j_, i_) = (m as i64, j as i64, i as i64);
    let add = IndexSet::new(vec![tilde(j_ + a + m_ - 1, n)], n)?;
    let remove = IndexSet::new(vec![tilde(a + m_ - i_, n)], n)?;
    Ok(loc.center_set().union(&add).difference(&remove))
}

/// `x_ij = [M_alpha ∪ {j + alpha + m - 1} \ {alpha + m - i}] [M_alpha]^-1`.
pub fn dehom_x(loc: &Localization, i: usize, j: usize) -> Result<LocalizedElement> {
    let (m, n) = loc.ambient();
    loc.make(maximal_minor(&dehom_x_set(loc, i, j)?, m, n)?, 1)
}

/// All quantum-matrix relations among the `x_ij`, as an `m x (n - m)` matrix.
pub fn verify_dehom_qmatrix(m: usize, n: usize, alpha: usize) -> Result<Report> {
    let loc = Localization::new(m, n, alpha)?;
    let label = format!("x(alpha={alpha})");
    let mut report = check_qmatrix_relations(&loc, &label, m, n - m, |i, j| dehom_x(&loc, i, j))?;
    for c in &mut report.checks {
        c.params["m"] = json!(m);
        c.params["n"] = json!(n);
    }
    Ok(report)
}

/// The `e` with `[M_alpha] x_ij = q^e x_ij [M_alpha]`.
pub fn sigma_exponent(loc: &Localization, i: usize, j: usize) -> Result<i64> {
    let x = dehom_x(loc, i, j)?;
    loc.commutation_exponent(x.numer())
}

/// Expected exponents at `alpha = 1, 2`: `+1`, except `-1` in the last column
/// for `alpha = 2`.
pub fn expected_sigma(m: usize, n: usize, alpha: usize, _i: usize, j: usize) -> Option<i64> {
    match alpha {
        1 => Some(1),
        2 if j == n - m => Some(-1),
        2 => Some(1),
        _ => None,
    }
}

pub fn verify_sigma_table(m: usize, n: usize) -> Result<Report> {
    let mut report = Report::new();
    for alpha in 1..=2 {
        let loc = Localization::new(m, n, alpha)?;
        for i in 1..=m {
            for j in 1..=n - m {
                let params = json!({ "m": m, "n": n, "alpha": alpha, "i": i, "j": j });
                let expected = expected_sigma(m, n, alpha, i, j).expect("table covers alpha 1 and 2");
                report.push(match sigma_exponent(&loc, i, j) {
                    Ok(e) => Check::expect("sigma-exponent", params, e == expected, || {
                        format!("got {e}, expected {expected}")
                    }),
                    Err(e) => Check::fail("sigma-exponent", params, e.to_string()),
                });
            }
        }
    }
    Ok(report)
}

/// Column set `M_alpha \ tilde((alpha + m) - I) ⊔ tilde((alpha + m - 1) + J)`.
fn rho_set(loc: &Localization, rows: &IndexSet, cols: &IndexSet) -> Result<IndexSet> {
    let (m, n) = loc.ambient();
    if rows.len() != cols.len() {
        return Err(Error::WrongCardinality {
            expected: rows.len(),
            got: cols.len(),
        });
    }
    for &i in rows.elems() {
        check_range("row", i, m)?;
    }
    for &j in cols.elems() {
        check_range("column", j, n - m)?;
    }
    let a = loc.alpha() as i64;
    let base = a + m as i64;
    let removed = IndexSet::new(rows.elems().iter().map(|&i| tilde(base - i as i64, n)).collect(), n)?;
    let added = IndexSet::new(cols.elems().iter().map(|&j| tilde(base - 1 + j as i64, n)).collect(), n)?;
    Ok(loc.center_set().difference(&removed).union(&added))
}

/// `rho([I|J])` for a maximal pair `|I| = |J| = m`.
pub fn rho(loc: &Localization, rows: &IndexSet, cols: &IndexSet) -> Result<LocalizedElement> {
    let (m, _) = loc.ambient();
    if rows.len() != m {
        return Err(Error::WrongCardinality {
            expected: m,
            got: rows.len(),
        });
    }
    rho_any(loc, rows, cols)
}

/// `rho([I|J])` for any `|I| = |J|`; the empty pair maps to `1`.
pub fn rho_any(loc: &Localization, rows: &IndexSet, cols: &IndexSet) -> Result<LocalizedElement> {
    let (m, n) = loc.ambient();
    loc.make(maximal_minor(&rho_set(loc, rows, cols)?, m, n)?, 1)
}

/// `phi_alpha([I]) = [rows | cols]_x * y_alpha^y_power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhiImage {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub y_power: u32,
}

/// Splits `I` into `I_r = I ∩ M_alpha` and `I_c = I \ I_r`; rows are
/// `(alpha + m) - (M_alpha \ I_r)` and columns `I_c - (alpha + m - 1)`, computed
/// on the representatives in `alpha..alpha + n - 1`.
pub fn phi_of_minor(loc: &Localization, set: &IndexSet) -> Result<PhiImage> {
    let (m, n) = loc.ambient();
    if set.len() != m {
        return Err(Error::WrongCardinality {
            expected: m,
            got: set.len(),
        });
    }
    if set.ambient() != n {
        return Err(Error::AmbientMismatch(m, set.ambient(), m, n));
    }
    let a = loc.alpha();
    let lift = |r: usize| a + (r + n - a) % n;
    let center = loc.center_set();
    let i_r = set.intersection(center);
    let i_c = set.difference(&i_r);
    let rows = center
        .difference(&i_r)
        .elems()
        .iter()
        .map(|&r| a + m - lift(r))
        .collect();
    let cols = i_c.elems().iter().map(|&c| lift(c) - (a + m - 1)).collect();
    Ok(PhiImage {
        rows: IndexSet::new(rows, m)?,
        cols: IndexSet::new(cols, n - m)?,
        y_power: 1,
    })
}

/// For every `m`-subset `I`: `rho(phi_alpha(I)) * [M_alpha] = [I]`.
pub fn verify_dehom_roundtrip(m: usize, n: usize, alpha: usize) -> Result<Report> {
    let loc = Localization::new(m, n, alpha)?;
    let mut report = Report::new();
    for set in IndexSet::all(m, n) {
        let params = json!({ "m": m, "n": n, "alpha": alpha, "minor": set });
        let outcome = (|| {
            let phi = phi_of_minor(&loc, &set)?;
            let mut img = rho_any(&loc, &phi.rows, &phi.cols)?;
            for _ in 0..phi.y_power {
                img = loc.mul(&img, &loc.y())?;
            }
            let target = loc.minor(&set)?;
            Ok::<_, Error>((loc.eq(&img, &target)?, phi, img))
        })();
        report.push(match outcome {
            Ok((true, phi, _)) => Check::ok_with("dehom-roundtrip", params, format!("[{}|{}] y", phi.rows, phi.cols)),
            Ok((false, phi, img)) => Check::fail(
                "dehom-roundtrip",
                params,
                format!("rho[{}|{}] y = {img}", phi.rows, phi.cols),
            ),
            Err(e) => Check::fail("dehom-roundtrip", params, e.to_string()),
        });
    }
    Ok(report)
}

/// Quantum minors of the `x_ij` agree with `rho` for every pair size.
pub fn verify_rho_minors(m: usize, n: usize, alpha: usize) -> Result<Report> {
    let loc = Localization::new(m, n, alpha)?;
    let mut report = Report::new();
    for k in 1..=m {
        for rows in IndexSet::all(k, m) {
            for cols in IndexSet::all(k, n - m) {
                let params = json!({ "m": m, "n": n, "alpha": alpha, "rows": rows, "cols": cols });
                let outcome = (|| {
                    let pair = IndexPair::new(rows.clone(), cols.clone())?;
                    let minor = minor_in(&loc, &pair, |i, j| dehom_x(&loc, i, j))?;
                    let image = rho_any(&loc, &rows, &cols)?;
                    Ok::<_, Error>((loc.eq(&minor, &image)?, minor, image))
                })();
                report.push(match outcome {
                    Ok((true, ..)) => Check::ok("rho-minor", params),
                    Ok((false, minor, image)) => {
                        Check::fail("rho-minor", params, format!("minor {minor}; rho {image}"))
                    }
                    Err(e) => Check::fail("rho-minor", params, e.to_string()),
                });
            }
        }
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
    fn x_examples() {
        let l1 = Localization::new(2, 4, 1).unwrap();
        assert_eq!(dehom_x_set(&l1, 1, 1).unwrap(), set(&[1, 3], 4));
        assert_eq!(dehom_x_set(&l1, 2, 2).unwrap(), set(&[2, 4], 4));
        let l2 = Localization::new(2, 4, 2).unwrap();
        assert_eq!(dehom_x_set(&l2, 1, 2).unwrap(), set(&[1, 2], 4));
        assert_eq!(dehom_x(&l2, 1, 2).unwrap().denom_exp(), 1);
        assert!(matches!(dehom_x(&l1, 3, 1), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(dehom_x(&l1, 1, 3), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn x_matrix_is_quantum() {
        for alpha in 1..=4 {
            let report = verify_dehom_qmatrix(2, 4, alpha).unwrap();
            assert!(report.all_ok(), "alpha={alpha}: {:?}", report.failures().next());
        }
    }

    #[test]
    fn sigma_tables() {
        assert!(verify_sigma_table(2, 4).unwrap().all_ok());
        assert!(verify_sigma_table(2, 5).unwrap().all_ok());
    }

    #[test]
    fn rho_examples() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let r = rho(&loc, &set(&[1, 2], 2), &set(&[1, 2], 2)).unwrap();
        assert_eq!(r.numer(), &maximal_minor(&set(&[3, 4], 4), 2, 4).unwrap());
        assert!(matches!(
            rho(&loc, &set(&[1, 2], 2), &set(&[2], 2)),
            Err(Error::WrongCardinality { .. })
        ));
        assert!(matches!(
            rho(&loc, &set(&[1], 2), &set(&[1], 2)),
            Err(Error::WrongCardinality { .. })
        ));
        let x11 = rho_any(&loc, &set(&[1], 2), &set(&[1], 2)).unwrap();
        assert_eq!(x11, dehom_x(&loc, 1, 1).unwrap());
    }

    #[test]
    fn phi_examples() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let center = phi_of_minor(&loc, &set(&[1, 2], 4)).unwrap();
        assert!(center.rows.is_empty() && center.cols.is_empty());
        let p13 = phi_of_minor(&loc, &set(&[1, 3], 4)).unwrap();
        assert_eq!((p13.rows.elems(), p13.cols.elems()), (&[1][..], &[1][..]));
        let p34 = phi_of_minor(&loc, &set(&[3, 4], 4)).unwrap();
        assert_eq!((p34.rows.elems(), p34.cols.elems()), (&[1, 2][..], &[1, 2][..]));
        assert!(matches!(
            phi_of_minor(&loc, &set(&[1], 4)),
            Err(Error::WrongCardinality { .. })
        ));
    }

    #[test]
    fn roundtrip_small() {
        for alpha in 1..=4 {
            assert!(verify_dehom_roundtrip(2, 4, alpha).unwrap().all_ok());
            assert!(verify_rho_minors(2, 4, alpha).unwrap().all_ok());
        }
    }
}
