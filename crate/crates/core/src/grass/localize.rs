//! Localisation of `O_q(G(m,n))` at a consecutive maximal minor `M = [M_alpha]`.
//!
//! Elements are `u * M^-k` with the denominator on the right. Since `M` is
//! normal, `M^-k v = q^(-k e) v M^-k` whenever `M v = q^e v M`, so products
//! stay in this form; `u` is split into content components to find `e`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::grass::quasi::{quasi_exponent, QuasiExponent};
use crate::minors::{consecutive_minor, maximal_minor, minor_content, IndexSet};
use crate::model::Model;
use crate::qmatrix::{Content, NCPoly};
use crate::scalar::{q_power, LaurentScalar};

/// `numer * [M_alpha]^-denom_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizedElement {
    numer: NCPoly,
    denom_exp: u32,
    alpha: usize,
}

impl LocalizedElement {
    pub fn numer(&self) -> &NCPoly {
        &self.numer
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn scaled(&self, lambda: &LaurentScalar) -> LocalizedElement {
        let numer = self.numer.scale(lambda);
        let denom_exp = if numer.is_zero() { 0 } else { self.denom_exp };
        LocalizedElement {
            numer,
            denom_exp,
            alpha: self.alpha,
        }
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            return write!(f, "{}", self.numer);
        }
        if self.numer.len() > 1 {
            write!(f, "({})", self.numer)?;
        } else {
            write!(f, "{}", self.numer)?;
        }
        write!(f, " * M{}^-{}", self.alpha, self.denom_exp)
    }
}

/// `O_q(G(m,n))[M_alpha^-1]`.
#[derive(Debug, Clone)]
pub struct Localization {
    m: usize,
    n: usize,
    alpha: usize,
    center_set: IndexSet,
    center: NCPoly,
    center_content: Content,
}

impl Localization {
    pub fn new(m: usize, n: usize, alpha: usize) -> Result<Self> {
        if m == 0 || m >= n {
            return Err(Error::PrereqViolation(format!("need 1 <= m < n, got ({m},{n})")));
        }
        if alpha == 0 || alpha > n {
            return Err(Error::IndexOutOfRange(format!("alpha = {alpha} outside 1..={n}")));
        }
        let center_set = consecutive_minor(alpha, m, n);
        let center = maximal_minor(&center_set, m, n)?;
        let center_content = minor_content(&center_set);
        Ok(Self {
            m,
            n,
            alpha,
            center_set,
            center,
            center_content,
        })
    }

    pub fn ambient(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn center_set(&self) -> &IndexSet {
        &self.center_set
    }

    pub fn center(&self) -> &NCPoly {
        &self.center
    }

    /// `numer * M^-k`, with `k` lowered while `numer` is a right multiple of `M`.
    pub fn make(&self, numer: NCPoly, k: u32) -> Result<LocalizedElement> {
        if numer.ambient() != (self.m, self.n) {
            let (a, b) = numer.ambient();
            return Err(Error::AmbientMismatch(a, b, self.m, self.n));
        }
        let mut numer = numer;
        let mut k = k;
        if numer.is_zero() {
            k = 0;
        }
        while k > 0 {
            match numer.right_divide(&self.center)? {
                Some(v) => {
                    numer = v;
                    k -= 1;
                }
                None => break,
            }
        }
        Ok(LocalizedElement {
            numer,
            denom_exp: k,
            alpha: self.alpha,
        })
    }

    pub fn zero(&self) -> LocalizedElement {
        LocalizedElement {
            numer: NCPoly::zero(self.m, self.n),
            denom_exp: 0,
            alpha: self.alpha,
        }
    }

    pub fn unit(&self) -> LocalizedElement {
        LocalizedElement {
            numer: NCPoly::one(self.m, self.n),
            denom_exp: 0,
            alpha: self.alpha,
        }
    }

    /// `[J]` as a fraction with trivial denominator.
    pub fn minor(&self, cols: &IndexSet) -> Result<LocalizedElement> {
        self.make(maximal_minor(cols, self.m, self.n)?, 0)
    }

    /// `y_alpha = [M_alpha]`.
    pub fn y(&self) -> LocalizedElement {
        LocalizedElement {
            numer: self.center.clone(),
            denom_exp: 0,
            alpha: self.alpha,
        }
    }

    /// `y_alpha^-1 = 1 * M^-1`.
    pub fn y_inv(&self) -> LocalizedElement {
        LocalizedElement {
            numer: NCPoly::one(self.m, self.n),
            denom_exp: 1,
            alpha: self.alpha,
        }
    }

    fn check(&self, a: &LocalizedElement) -> Result<()> {
        if a.alpha != self.alpha {
            return Err(Error::CenterMismatch(self.alpha, a.alpha));
        }
        if a.numer.ambient() != (self.m, self.n) {
            let (x, y) = a.numer.ambient();
            return Err(Error::AmbientMismatch(x, y, self.m, self.n));
        }
        Ok(())
    }

    /// The `e` with `M v = q^e v M`, for homogeneous nonzero `v`.
    pub fn commutation_exponent(&self, v: &NCPoly) -> Result<i64> {
        if v.len() == 1 && v.terms().all(|(w, _)| w.is_empty()) {
            return Ok(0);
        }
        let QuasiExponent(e) = quasi_exponent(&self.center, v)?;
        Ok(e)
    }

    fn power_of_center(&self, k: u32) -> NCPoly {
        self.center.pow(k)
    }

    pub fn mul(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        self.check(a)?;
        self.check(b)?;
        let moved = if a.denom_exp == 0 {
            b.numer.clone()
        } else {
            let mut acc = NCPoly::zero(self.m, self.n);
            for v in b.numer.homogeneous_components().into_values() {
                let e = self.commutation_exponent(&v)?;
                acc = &acc + &v.scale(&q_power(-(a.denom_exp as i64) * e, self.m));
            }
            acc
        };
        self.make(a.numer.try_mul(&moved)?, a.denom_exp + b.denom_exp)
    }

    /// Rewrites `a` over the denominator `M^k`, `k >= a.denom_exp`.
    fn lift(&self, a: &LocalizedElement, k: u32) -> NCPoly {
        &a.numer * &self.power_of_center(k - a.denom_exp)
    }

    pub fn add(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        self.check(a)?;
        self.check(b)?;
        let k = a.denom_exp.max(b.denom_exp);
        self.make(&self.lift(a, k) + &self.lift(b, k), k)
    }

    pub fn sub(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        self.add(a, &self.scale(b, &LaurentScalar::from_int(-1)))
    }

    pub fn scale(&self, a: &LocalizedElement, lambda: &LaurentScalar) -> LocalizedElement {
        a.scaled(lambda)
    }

    /// Cross-multiplied equality; never relies on reduced forms.
    pub fn eq(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        let k = a.denom_exp.max(b.denom_exp);
        Ok(self.lift(a, k) == self.lift(b, k))
    }

    /// The scalar `lambda` with `a = lambda * b`, if any.
    pub fn ratio(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<Option<LaurentScalar>> {
        self.check(a)?;
        self.check(b)?;
        let k = a.denom_exp.max(b.denom_exp);
        self.lift(a, k).ratio(&self.lift(b, k))
    }

    /// `content(numer) - k * content(M)`; errors on inhomogeneous elements.
    pub fn content(&self, a: &LocalizedElement) -> Result<Content> {
        self.check(a)?;
        let c = if a.numer.is_zero() {
            Content::zero(self.n)
        } else {
            a.numer.column_content()?
        };
        Ok(&c - &self.center_content.scaled(a.denom_exp as i64))
    }

    /// Homogeneous components keyed by localized content.
    pub fn components(&self, a: &LocalizedElement) -> Result<BTreeMap<Content, LocalizedElement>> {
        self.check(a)?;
        let shift = self.center_content.scaled(a.denom_exp as i64);
        Ok(a.numer
            .homogeneous_components()
            .into_iter()
            .map(|(c, v)| {
                let e = LocalizedElement {
                    numer: v,
                    denom_exp: a.denom_exp,
                    alpha: a.alpha,
                };
                (&c - &shift, e)
            })
            .collect())
    }
}

impl Model for Localization {
    type Elem = LocalizedElement;

    fn one(&self) -> LocalizedElement {
        self.unit()
    }
    fn mul(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        Localization::mul(self, a, b)
    }
    fn add(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<LocalizedElement> {
        Localization::add(self, a, b)
    }
    fn scale(&self, a: &LocalizedElement, lambda: &LaurentScalar) -> LocalizedElement {
        Localization::scale(self, a, lambda)
    }
    fn equal(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<bool> {
        self.eq(a, b)
    }
    fn ratio(&self, a: &LocalizedElement, b: &LocalizedElement) -> Result<Option<LaurentScalar>> {
        Localization::ratio(self, a, b)
    }
    fn q(&self, k: i64) -> LaurentScalar {
        q_power(k, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> IndexSet {
        IndexSet::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn x11_times_y1_is_minor() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let x11 = loc.make(maximal_minor(&set(&[1, 3], 4), 2, 4).unwrap(), 1).unwrap();
        assert_eq!(x11.denom_exp(), 1);
        let prod = loc.mul(&x11, &loc.y()).unwrap();
        assert_eq!(prod, loc.minor(&set(&[1, 3], 4)).unwrap());
        assert_eq!(prod.denom_exp(), 0);
    }

    #[test]
    fn reduction_and_identity() {
        let loc = Localization::new(2, 4, 2).unwrap();
        let u = maximal_minor(&set(&[1, 4], 4), 2, 4).unwrap();
        let a = loc.make(&u * loc.center(), 1).unwrap();
        let b = loc.make(u.clone(), 0).unwrap();
        assert!(loc.eq(&a, &b).unwrap());
        assert_eq!(a, b);
        assert_eq!(loc.mul(&a, &loc.unit()).unwrap(), a);
        let unreduced = LocalizedElement {
            numer: &u * loc.center(),
            denom_exp: 1,
            alpha: 2,
        };
        assert!(loc.eq(&unreduced, &b).unwrap());
    }

    #[test]
    fn y_inverse_is_two_sided() {
        for alpha in 1..=4 {
            let loc = Localization::new(2, 4, alpha).unwrap();
            assert_eq!(loc.mul(&loc.y(), &loc.y_inv()).unwrap(), loc.unit());
            assert_eq!(loc.mul(&loc.y_inv(), &loc.y()).unwrap(), loc.unit());
        }
    }

    #[test]
    fn moving_the_denominator_is_consistent() {
        // y (y^-1 v) = v and (v y^-1) y = v for every minor v
        for alpha in 1..=4 {
            let loc = Localization::new(2, 4, alpha).unwrap();
            for s in IndexSet::all(2, 4) {
                let v = loc.minor(&s).unwrap();
                let left = loc.mul(&loc.y(), &loc.mul(&loc.y_inv(), &v).unwrap()).unwrap();
                assert!(loc.eq(&left, &v).unwrap(), "alpha={alpha} v={s}");
                let right = loc.mul(&loc.mul(&v, &loc.y_inv()).unwrap(), &loc.y()).unwrap();
                assert!(loc.eq(&right, &v).unwrap());
            }
        }
    }

    #[test]
    fn associativity_on_fractions() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let elems: Vec<_> = IndexSet::all(2, 4)
            .iter()
            .map(|s| loc.make(maximal_minor(s, 2, 4).unwrap(), 1).unwrap())
            .collect();
        for a in &elems {
            for b in elems.iter().step_by(2) {
                for c in elems.iter().skip(1).step_by(2) {
                    let l = loc.mul(&loc.mul(a, b).unwrap(), c).unwrap();
                    let r = loc.mul(a, &loc.mul(b, c).unwrap()).unwrap();
                    assert!(loc.eq(&l, &r).unwrap());
                }
            }
        }
    }

    #[test]
    fn center_mismatch_is_reported() {
        let a = Localization::new(2, 4, 1).unwrap();
        let b = Localization::new(2, 4, 2).unwrap();
        assert_eq!(a.mul(&a.y(), &b.y()), Err(Error::CenterMismatch(1, 2)));
    }

    #[test]
    fn content_of_fraction() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let x = loc.make(maximal_minor(&set(&[2, 4], 4), 2, 4).unwrap(), 1).unwrap();
        assert_eq!(loc.content(&x).unwrap(), Content(vec![-1, 0, 0, 1]));
        assert_eq!(loc.content(&loc.y_inv()).unwrap(), Content(vec![-1, -1, 0, 0]));
    }

    #[test]
    fn y_content_is_the_first_m_unit_vectors() {
        for (m, n) in [(2, 4), (2, 5), (3, 6)] {
            let loc = Localization::new(m, n, 1).unwrap();
            let expected = (1..=m).fold(Content::zero(n), |acc, i| &acc + &Content::unit(n, i));
            assert_eq!(loc.content(&loc.y()).unwrap(), expected);
        }
    }
}
