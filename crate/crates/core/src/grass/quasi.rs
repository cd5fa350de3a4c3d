use serde_json::json;

use crate::error::{Error, Result};
use crate::minors::{consecutive_minor, maximal_minor, IndexSet};
use crate::qmatrix::NCPoly;
use crate::report::{Check, Report};

/// The integer `c` with `u v = q^c v u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct QuasiExponent(pub i64);

/// Finds `c` with `u * v = q^c * v * u`.
pub fn quasi_exponent(u: &NCPoly, v: &NCPoly) -> Result<QuasiExponent> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::ZeroElement);
    }
    let uv = u.try_mul(v)?;
    let vu = v.try_mul(u)?;
    let residual = || format!("uv - vu = {}", &uv - &vu);
    let lambda = uv
        .monomial_ratio(&vu)?
        .ok_or_else(|| Error::NotQuasiCommuting(residual()))?;
    let m = u.rows() as i64;
    match lambda.as_monomial() {
        Some((c, e)) if *c == 1.into() && e % m == 0 => Ok(QuasiExponent(e / m)),
        _ => Err(Error::NotQuasiCommuting(format!("ratio {lambda} is not a power of q"))),
    }
}

/// One `(alpha, J, c)` entry of the normality table.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct NormalityEntry {
    pub alpha: usize,
    pub minor: IndexSet,
    pub exponent: i64,
}

/// Quasi-commutation of every consecutive minor with every maximal minor.
pub fn consecutive_normality_table(m: usize, n: usize) -> Result<Vec<NormalityEntry>> {
    let all = IndexSet::all(m, n);
    let minors = all.iter().map(|s| maximal_minor(s, m, n)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for alpha in 1..=n {
        let center_set = consecutive_minor(alpha, m, n);
        let center = maximal_minor(&center_set, m, n)?;
        for (s, minor) in all.iter().zip(&minors) {
            let QuasiExponent(c) = quasi_exponent(&center, minor)?;
            out.push(NormalityEntry {
                alpha,
                minor: s.clone(),
                exponent: c,
            });
        }
    }
    Ok(out)
}

/// Report form of [`consecutive_normality_table`]: one check per `(alpha, J)`.
pub fn verify_consecutive_normality(m: usize, n: usize) -> Result<Report> {
    if m == 0 || m >= n {
        return Err(Error::PrereqViolation(format!("need 1 <= m < n, got ({m},{n})")));
    }
    let all = IndexSet::all(m, n);
    let minors = all.iter().map(|s| maximal_minor(s, m, n)).collect::<Result<Vec<_>>>()?;
    let mut report = Report::new();
    for alpha in 1..=n {
        let center_set = consecutive_minor(alpha, m, n);
        let center = maximal_minor(&center_set, m, n)?;
        for (s, minor) in all.iter().zip(&minors) {
            let params = json!({ "m": m, "n": n, "alpha": alpha, "center": center_set, "minor": s });
            report.push(match quasi_exponent(&center, minor) {
                Ok(QuasiExponent(c)) => Check::ok_with("consecutive-normality", params, format!("c = {c}")),
                Err(e) => Check::fail("consecutive-normality", params, e.to_string()),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minor(v: &[usize], m: usize, n: usize) -> NCPoly {
        maximal_minor(&IndexSet::new(v.to_vec(), n).unwrap(), m, n).unwrap()
    }

    #[test]
    fn quasi_exponent_examples() {
        assert_eq!(
            quasi_exponent(&minor(&[1, 2], 2, 4), &minor(&[1, 3], 2, 4)).unwrap(),
            QuasiExponent(1)
        );
        assert_eq!(
            quasi_exponent(&minor(&[1, 4], 2, 4), &minor(&[2, 3], 2, 4)).unwrap(),
            QuasiExponent(0)
        );
        assert!(matches!(
            quasi_exponent(&minor(&[1, 3], 2, 4), &minor(&[2, 4], 2, 4)),
            Err(Error::NotQuasiCommuting(_))
        ));
        assert!(matches!(
            quasi_exponent(&NCPoly::zero(2, 4), &minor(&[2, 4], 2, 4)),
            Err(Error::ZeroElement)
        ));
    }

    #[test]
    fn antisymmetry() {
        let all = IndexSet::all(2, 4);
        for a in &all {
            for b in &all {
                let (u, v) = (minor(a.elems(), 2, 4), minor(b.elems(), 2, 4));
                if let Ok(QuasiExponent(c)) = quasi_exponent(&u, &v) {
                    assert_eq!(quasi_exponent(&v, &u).unwrap(), QuasiExponent(-c));
                }
            }
        }
    }

    #[test]
    fn normality_at_two_four() {
        let table = consecutive_normality_table(2, 4).unwrap();
        assert_eq!(table.len(), 4 * 6);
        let self_entry = table
            .iter()
            .find(|e| e.alpha == 1 && e.minor.elems() == [1, 2])
            .unwrap();
        assert_eq!(self_entry.exponent, 0);
        assert!(verify_consecutive_normality(2, 4).unwrap().all_ok());
    }

    #[test]
    fn normality_at_two_five() {
        let report = verify_consecutive_normality(2, 5).unwrap();
        assert_eq!(report.len(), 5 * 10);
        assert!(report.all_ok());
    }
}
