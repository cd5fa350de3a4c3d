//! The twist `T(A)`: same carriers, multiplication `a' b' = c(s,t) (ab)'`
//! applied bilinearly to content components.

use std::fmt;

use crate::error::{Error, Result};
use crate::grass::localize::{Localization, LocalizedElement};
use crate::model::Model;
use crate::qmatrix::{Content, NCPoly};
use crate::scalar::{q_power, LaurentScalar};
use crate::twist::cocycle::Cocycle;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    Grass(NCPoly),
    Local(LocalizedElement),
}

impl Carrier {
    pub fn as_grass(&self) -> Option<&NCPoly> {
        match self {
            Carrier::Grass(a) => Some(a),
            Carrier::Local(_) => None,
        }
    }

    pub fn as_local(&self) -> Option<&LocalizedElement> {
        match self {
            Carrier::Local(a) => Some(a),
            Carrier::Grass(_) => None,
        }
    }

    pub fn scaled(&self, lambda: &LaurentScalar) -> Carrier {
        match self {
            Carrier::Grass(a) => Carrier::Grass(a.scale(lambda)),
            Carrier::Local(a) => Carrier::Local(a.scaled(lambda)),
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::Grass(a) => write!(f, "{a}"),
            Carrier::Local(a) => write!(f, "{a}"),
        }
    }
}

/// `a'` for a carrier `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedElement {
    carrier: Carrier,
}

impl TwistedElement {
    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn into_carrier(self) -> Carrier {
        self.carrier
    }
}

impl fmt::Display for TwistedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})'", self.carrier)
    }
}

/// `T(O_q(G(m,n)))` or `T(O_q(G(m,n))[M_alpha^-1])`.
#[derive(Debug, Clone)]
pub enum TwistModel {
    Grass { m: usize, n: usize },
    Local(Localization),
}

impl TwistModel {
    pub fn grass(m: usize, n: usize) -> Self {
        TwistModel::Grass { m, n }
    }

    pub fn local(loc: Localization) -> Self {
        TwistModel::Local(loc)
    }

    pub fn ambient(&self) -> (usize, usize) {
        match self {
            TwistModel::Grass { m, n } => (*m, *n),
            TwistModel::Local(loc) => loc.ambient(),
        }
    }

    pub fn cocycle(&self) -> Cocycle {
        Cocycle::new(self.ambient().1)
    }

    /// The twist map `a -> a'`.
    pub fn twist(&self, a: Carrier) -> Result<TwistedElement> {
        match (self, &a) {
            (TwistModel::Grass { m, n }, Carrier::Grass(p)) if p.ambient() == (*m, *n) => {
                Ok(TwistedElement { carrier: a })
            }
            (TwistModel::Local(loc), Carrier::Local(e))
                if e.alpha() == loc.alpha() && e.numer().ambient() == loc.ambient() =>
            {
                Ok(TwistedElement { carrier: a })
            }
            _ => Err(Error::ModelMismatch),
        }
    }

    pub fn twist_grass(&self, a: NCPoly) -> Result<TwistedElement> {
        self.twist(Carrier::Grass(a))
    }

    pub fn twist_local(&self, a: LocalizedElement) -> Result<TwistedElement> {
        self.twist(Carrier::Local(a))
    }

    fn check(&self, a: &TwistedElement) -> Result<()> {
        self.twist(a.carrier.clone()).map(|_| ())
    }

    /// Content-homogeneous components of the carrier.
    pub fn components(&self, a: &TwistedElement) -> Result<Vec<(Content, Carrier)>> {
        self.check(a)?;
        Ok(match (&a.carrier, self) {
            (Carrier::Grass(p), _) => p
                .homogeneous_components()
                .into_iter()
                .map(|(c, v)| (c, Carrier::Grass(v)))
                .collect(),
            (Carrier::Local(e), TwistModel::Local(loc)) => loc
                .components(e)?
                .into_iter()
                .map(|(c, v)| (c, Carrier::Local(v)))
                .collect(),
            _ => return Err(Error::ModelMismatch),
        })
    }

    fn carrier_mul(&self, a: &Carrier, b: &Carrier) -> Result<Carrier> {
        match (self, a, b) {
            (TwistModel::Grass { .. }, Carrier::Grass(x), Carrier::Grass(y)) => Ok(Carrier::Grass(x.try_mul(y)?)),
            (TwistModel::Local(loc), Carrier::Local(x), Carrier::Local(y)) => Ok(Carrier::Local(loc.mul(x, y)?)),
            _ => Err(Error::ModelMismatch),
        }
    }

    fn carrier_add(&self, a: &Carrier, b: &Carrier) -> Result<Carrier> {
        match (self, a, b) {
            (TwistModel::Grass { .. }, Carrier::Grass(x), Carrier::Grass(y)) => Ok(Carrier::Grass(x.try_add(y)?)),
            (TwistModel::Local(loc), Carrier::Local(x), Carrier::Local(y)) => Ok(Carrier::Local(loc.add(x, y)?)),
            _ => Err(Error::ModelMismatch),
        }
    }

    fn carrier_scale(&self, a: &Carrier, lambda: &LaurentScalar) -> Carrier {
        a.scaled(lambda)
    }

    fn carrier_zero(&self) -> Carrier {
        match self {
            TwistModel::Grass { m, n } => Carrier::Grass(NCPoly::zero(*m, *n)),
            TwistModel::Local(loc) => Carrier::Local(loc.zero()),
        }
    }

    pub fn unit(&self) -> TwistedElement {
        let carrier = match self {
            TwistModel::Grass { m, n } => Carrier::Grass(NCPoly::one(*m, *n)),
            TwistModel::Local(loc) => Carrier::Local(loc.unit()),
        };
        TwistedElement { carrier }
    }

    /// `sum_{s,t} c(s,t) a_s b_t`.
    pub fn twisted_mul(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        let cocycle = self.cocycle();
        let (ca, cb) = (self.components(a)?, self.components(b)?);
        let mut acc = self.carrier_zero();
        for (s, x) in &ca {
            for (t, y) in &cb {
                let term = self.carrier_mul(x, y)?;
                acc = self.carrier_add(&acc, &self.carrier_scale(&term, &cocycle.value(s, t)?))?;
            }
        }
        Ok(TwistedElement { carrier: acc })
    }

    pub fn add(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(TwistedElement {
            carrier: self.carrier_add(&a.carrier, &b.carrier)?,
        })
    }

    pub fn scale(&self, a: &TwistedElement, lambda: &LaurentScalar) -> TwistedElement {
        TwistedElement {
            carrier: self.carrier_scale(&a.carrier, lambda),
        }
    }

    pub fn eq(&self, a: &TwistedElement, b: &TwistedElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        match (self, &a.carrier, &b.carrier) {
            (TwistModel::Grass { .. }, Carrier::Grass(x), Carrier::Grass(y)) => Ok(x == y),
            (TwistModel::Local(loc), Carrier::Local(x), Carrier::Local(y)) => loc.eq(x, y),
            _ => Err(Error::ModelMismatch),
        }
    }

    pub fn ratio(&self, a: &TwistedElement, b: &TwistedElement) -> Result<Option<LaurentScalar>> {
        self.check(a)?;
        self.check(b)?;
        match (self, &a.carrier, &b.carrier) {
            (TwistModel::Grass { .. }, Carrier::Grass(x), Carrier::Grass(y)) => x.ratio(y),
            (TwistModel::Local(loc), Carrier::Local(x), Carrier::Local(y)) => loc.ratio(x, y),
            _ => Err(Error::ModelMismatch),
        }
    }

    pub fn is_zero(&self, a: &TwistedElement) -> bool {
        match &a.carrier {
            Carrier::Grass(x) => x.is_zero(),
            Carrier::Local(x) => x.is_zero(),
        }
    }
}

impl Model for TwistModel {
    type Elem = TwistedElement;

    fn one(&self) -> TwistedElement {
        self.unit()
    }
    fn mul(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        self.twisted_mul(a, b)
    }
    fn add(&self, a: &TwistedElement, b: &TwistedElement) -> Result<TwistedElement> {
        TwistModel::add(self, a, b)
    }
    fn scale(&self, a: &TwistedElement, lambda: &LaurentScalar) -> TwistedElement {
        TwistModel::scale(self, a, lambda)
    }
    fn equal(&self, a: &TwistedElement, b: &TwistedElement) -> Result<bool> {
        self.eq(a, b)
    }
    fn ratio(&self, a: &TwistedElement, b: &TwistedElement) -> Result<Option<LaurentScalar>> {
        TwistModel::ratio(self, a, b)
    }
    fn q(&self, k: i64) -> LaurentScalar {
        q_power(k, self.ambient().0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grass::dehom::dehom_x;
    use crate::minors::{maximal_minor, IndexSet};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn x(loc: &Localization, tm: &TwistModel, i: usize, j: usize) -> TwistedElement {
        tm.twist_local(dehom_x(loc, i, j).unwrap()).unwrap()
    }

    #[test]
    fn products_avoiding_last_column_are_untwisted() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let tm = TwistModel::local(loc.clone());
        let prod = tm.twisted_mul(&x(&loc, &tm, 1, 1), &x(&loc, &tm, 1, 2)).unwrap();
        let plain = loc
            .mul(&dehom_x(&loc, 1, 1).unwrap(), &dehom_x(&loc, 1, 2).unwrap())
            .unwrap();
        assert!(tm.eq(&prod, &tm.twist_local(plain).unwrap()).unwrap());
    }

    #[test]
    fn y_against_last_column() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let tm = TwistModel::local(loc.clone());
        let y = tm.twist_local(loc.y()).unwrap();
        for i in 1..=2 {
            let xi = x(&loc, &tm, i, 2);
            let lhs = tm.twisted_mul(&y, &xi).unwrap();
            let rhs = tm.scale(&tm.twisted_mul(&xi, &y).unwrap(), &q_power(-1, 2));
            assert!(tm.eq(&lhs, &rhs).unwrap());
            // untwisted: y x = q x y
            let plain = loc.mul(&loc.y(), xi.carrier().as_local().unwrap()).unwrap();
            let swapped = loc.scale(
                &loc.mul(xi.carrier().as_local().unwrap(), &loc.y()).unwrap(),
                &q_power(1, 2),
            );
            assert!(loc.eq(&plain, &swapped).unwrap());
        }
    }

    #[test]
    fn unit_is_neutral_and_mismatch_is_rejected() {
        let tm = TwistModel::grass(2, 4);
        let a = tm
            .twist_grass(maximal_minor(&IndexSet::new(vec![2, 4], 4).unwrap(), 2, 4).unwrap())
            .unwrap();
        assert_eq!(tm.twisted_mul(&a, &tm.unit()).unwrap(), a);
        assert_eq!(tm.twisted_mul(&tm.unit(), &a).unwrap(), a);
        let other = TwistModel::local(Localization::new(2, 4, 1).unwrap());
        assert_eq!(other.twisted_mul(&a, &a), Err(Error::ModelMismatch));
    }

    fn random_grass(rng: &mut ChaCha8Rng, minors: &[NCPoly]) -> NCPoly {
        let mut acc = NCPoly::zero(2, 4);
        for _ in 0..rng.gen_range(1..=2) {
            let a = &minors[rng.gen_range(0..minors.len())];
            let b = &minors[rng.gen_range(0..minors.len())];
            let c = LaurentScalar::monomial(rng.gen_range(-2i64..=2), rng.gen_range(-2i64..=2));
            let term = if rng.gen_bool(0.5) { a.clone() } else { a * b };
            acc = &acc + &term.scale(&c);
        }
        if acc.is_zero() {
            minors[0].clone()
        } else {
            acc
        }
    }

    #[test]
    fn associativity_grass_model() {
        let tm = TwistModel::grass(2, 4);
        let minors: Vec<_> = IndexSet::all(2, 4)
            .iter()
            .map(|s| maximal_minor(s, 2, 4).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let [a, b, c] = [(); 3].map(|_| tm.twist_grass(random_grass(&mut rng, &minors)).unwrap());
            let l = tm.twisted_mul(&tm.twisted_mul(&a, &b).unwrap(), &c).unwrap();
            let r = tm.twisted_mul(&a, &tm.twisted_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn associativity_local_model() {
        let loc = Localization::new(2, 4, 1).unwrap();
        let tm = TwistModel::local(loc.clone());
        let mut gens: Vec<_> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| (i, j)))
            .map(|(i, j)| dehom_x(&loc, i, j).unwrap())
            .collect();
        gens.push(loc.y());
        gens.push(loc.y_inv());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let [a, b, c] = [(); 3].map(|_| {
                let u = &gens[rng.gen_range(0..gens.len())];
                let v = &gens[rng.gen_range(0..gens.len())];
                let e = if rng.gen_bool(0.5) {
                    loc.mul(u, v).unwrap()
                } else {
                    loc.add(u, v).unwrap()
                };
                tm.twist_local(e).unwrap()
            });
            let l = tm.twisted_mul(&tm.twisted_mul(&a, &b).unwrap(), &c).unwrap();
            let r = tm.twisted_mul(&a, &tm.twisted_mul(&b, &c).unwrap()).unwrap();
            assert!(tm.eq(&l, &r).unwrap());
        }
    }
}
