//! Integer Laurent polynomials in one formal variable `t`.
//!
//! Every scalar in the library lives in `Z[t, t^-1]`. The quantum parameter is
//! `q = t^m` (with `m` the number of rows of the ambient quantum matrix) and the
//! cocycle parameter is `p = t^2`, so `p^m = q^2` holds identically.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of `Z[t, t^-1]`, stored as exponent -> nonzero coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: impl Into<BigInt>, exp: i64) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a scalar from `(coeff, exp)` pairs, merging repeated exponents.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (C, i64)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (c, e) in iter {
            out.add_term(e, c.into());
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn lowest_term(&self) -> Option<(i64, &BigInt)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }

    /// Coefficient of `t^exp` (zero if absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Returns `(c, e)` if `self = c * t^e` with a single term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    /// Units of `Z[t, t^-1]` are exactly `±t^e`.
    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some_and(|(c, _)| c.abs().is_one())
    }

    /// Inverse of a unit `±t^e`.
    pub fn inverse_unit(&self) -> Option<Self> {
        let (c, e) = self.as_monomial()?;
        if c.abs().is_one() {
            Some(Self::monomial(c.clone(), -e))
        } else {
            None
        }
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self * t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Nonnegative powers of any element, negative powers of units only.
    pub fn powi(&self, k: i64) -> Option<Self> {
        if k < 0 {
            return self.inverse_unit()?.powi(-k);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Some(acc)
    }

    /// Exact quotient `self / divisor` in `Z[t, t^-1]`, or `None` if it does not exist.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_lo, d_lc) = divisor.lowest_term()?;
        let d_lc = d_lc.clone();
        if self.is_zero() {
            return Some(Self::zero());
        }
        let top = self.max_exp()? - divisor.max_exp()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.lowest_term() {
            let shift = e - d_lo;
            if shift > top {
                return None;
            }
            let (qc, r) = c.div_rem(&d_lc);
            if !r.is_zero() {
                return None;
            }
            let step = divisor.shift(shift).scale_int(&qc);
            quot.add_term(shift, qc);
            rem -= &step;
        }
        Some(quot)
    }

    /// Largest `c * t^e` dividing every coefficient (c > 0, e = lowest exponent).
    pub fn monomial_content(&self) -> Option<(BigInt, i64)> {
        let lo = self.min_exp()?;
        let g = self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Some((g, lo))
    }

    /// Substitutes `t^(from) -> t^(to)` on exponents that are multiples of `from`.
    ///
    /// Used to move `q`-polynomials between ambients with different row counts.
    pub fn rescale(&self, from: i64, to: i64) -> Option<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e % from != 0 {
                return None;
            }
            out.add_term(e / from * to, c.clone());
        }
        Some(out)
    }
}

/// `q^k = t^(k*m)` for an ambient with `m` rows.
pub fn q_power(k: i64, m: usize) -> LaurentScalar {
    LaurentScalar::t_pow(k * m as i64)
}

/// `p^k = t^(2k)`.
pub fn p_power(k: i64) -> LaurentScalar {
    LaurentScalar::t_pow(2 * k)
}

/// `q - q^-1`.
pub fn q_minus_q_inv(m: usize) -> LaurentScalar {
    q_power(1, m) - q_power(-1, m)
}

/// Finds the single-term `lambda` with `a = lambda * b`, if one exists.
pub fn monomial_ratio(a: &LaurentScalar, b: &LaurentScalar) -> Result<Option<LaurentScalar>> {
    let Some((b_lo, b_lc)) = b.lowest_term() else {
        return Err(Error::ZeroDivisor);
    };
    let Some((a_lo, a_lc)) = a.lowest_term() else {
        return Ok(Some(LaurentScalar::zero()));
    };
    if a.len() != b.len() {
        return Ok(None);
    }
    let (c, r) = a_lc.div_rem(b_lc);
    if !r.is_zero() {
        return Ok(None);
    }
    let lambda = LaurentScalar::monomial(c, a_lo - b_lo);
    if &(&lambda * b) == a {
        Ok(Some(lambda))
    } else {
        Ok(None)
    }
}

impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}*t^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentScalar({self})")
    }
}

impl FromStr for LaurentScalar {
    type Err = Error;

    /// Parses the canonical text form, e.g. `-1*t^-2 + 3*t^0`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for part in s.split(" + ") {
            let bad = || Error::Parse(format!("malformed scalar term `{part}`"));
            let (c, e) = part.trim().split_once("*t^").ok_or_else(bad)?;
            let c: BigInt = c.parse().map_err(|_| bad())?;
            let e: i64 = e.parse().map_err(|_| bad())?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for LaurentScalar {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentScalar> for LaurentScalar {
    fn sub_assign(&mut self, rhs: &LaurentScalar) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl MulAssign<&LaurentScalar> for LaurentScalar {
    fn mul_assign(&mut self, rhs: &LaurentScalar) {
        *self = &*self * rhs;
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentScalar> for LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: &LaurentScalar) -> LaurentScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentScalar> for &LaurentScalar {
            type Output = LaurentScalar;
            fn $m(self, rhs: LaurentScalar) -> LaurentScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(e: i64) -> LaurentScalar {
        LaurentScalar::t_pow(e)
    }

    #[test]
    fn ring_examples() {
        assert!((t(2) + -t(2)).is_zero());
        assert_eq!((t(1) + t(0)) * (t(1) - t(0)), t(2) - t(0));
        assert_eq!(t(-1) * t(3), t(2));
    }

    #[test]
    fn q_and_p_powers() {
        assert_eq!(q_power(1, 2), t(2));
        assert_eq!(q_power(-2, 2), t(-4));
        assert!(q_power(0, 3).is_one());
        assert_eq!(p_power(1), t(2));
        assert_eq!(p_power(-1), t(-2));
        for m in 1..=6 {
            assert_eq!(p_power(m), q_power(2, m as usize));
        }
    }

    #[test]
    fn monomial_ratio_examples() {
        let a = t(2) + t(3);
        let b = t(1) + t(2);
        assert_eq!(monomial_ratio(&a, &b).unwrap(), Some(t(1)));
        let c = t(1) + t(0);
        assert_eq!(monomial_ratio(&c, &c).unwrap(), Some(LaurentScalar::one()));
        assert_eq!(monomial_ratio(&(t(2) + t(0)), &c).unwrap(), None);
        assert!(matches!(
            monomial_ratio(&c, &LaurentScalar::zero()),
            Err(Error::ZeroDivisor)
        ));
    }

    #[test]
    fn exact_division() {
        let a = (t(1) + t(0)) * (t(3) - LaurentScalar::from_int(2) * t(-1));
        assert_eq!(
            a.div_exact(&(t(1) + t(0))),
            Some(t(3) - LaurentScalar::from_int(2) * t(-1))
        );
        assert_eq!((t(2) + t(0)).div_exact(&(t(1) + t(0))), None);
        assert_eq!(LaurentScalar::from_int(3).div_exact(&LaurentScalar::from_int(2)), None);
    }

    #[test]
    fn text_form() {
        let s = LaurentScalar::from_terms([(-1, -2), (3, 0), (1, 4)]);
        assert_eq!(s.to_string(), "-1*t^-2 + 3*t^0 + 1*t^4");
        assert_eq!(s.to_string().parse::<LaurentScalar>().unwrap(), s);
        assert_eq!(LaurentScalar::zero().to_string(), "0");
    }

    #[test]
    fn unit_powers() {
        assert_eq!(t(3).powi(-2), Some(t(-6)));
        assert_eq!((t(1) + t(0)).powi(-1), None);
        assert_eq!(
            (t(1) + t(0)).powi(2),
            Some(t(2) + LaurentScalar::from_int(2) * t(1) + t(0))
        );
    }

    fn arb_scalar() -> impl Strategy<Value = LaurentScalar> {
        prop::collection::vec((-4i64..=4, -3i64..=3), 0..5).prop_map(LaurentScalar::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn division_inverts_multiplication(a in arb_scalar(), b in arb_scalar()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
        }

        #[test]
        fn text_round_trip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<LaurentScalar>().unwrap(), a);
        }
    }
}
