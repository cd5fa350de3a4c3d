//! The `Z^n` two-cocycle `c(s,t) = p^(s_n * sum_{j != n} t_j)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use serde_json::json;

use crate::error::{Error, Result};
use crate::qmatrix::Content;
use crate::report::{Check, Report};
use crate::scalar::{p_power, LaurentScalar};

pub type Triple = (Content, Content, Content);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cocycle {
    pub n: usize,
}

impl Cocycle {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    /// `e(s,t) = s_n * sum_{j != n} t_j`.
    pub fn exponent(&self, s: &Content, t: &Content) -> Result<i64> {
        for v in [s, t] {
            if v.len() != self.n {
                return Err(Error::LengthMismatch(self.n, v.len()));
            }
        }
        let n = self.n;
        Ok(s.0[n - 1] * t.0[..n - 1].iter().sum::<i64>())
    }

    pub fn value(&self, s: &Content, t: &Content) -> Result<LaurentScalar> {
        Ok(p_power(self.exponent(s, t)?))
    }

    /// `c(s,t)^-1`.
    pub fn inverse_value(&self, s: &Content, t: &Content) -> Result<LaurentScalar> {
        Ok(p_power(-self.exponent(s, t)?))
    }
}

pub fn cocycle_value(s: &Content, t: &Content) -> Result<LaurentScalar> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    Cocycle::new(s.len()).value(s, t)
}

/// `c(s,t+u) c(t,u) = c(s,t) c(s+t,u)`.
pub fn cocycle_identity_holds(s: &Content, t: &Content, u: &Content) -> Result<bool> {
    let lhs = &cocycle_value(s, &(t + u))? * &cocycle_value(t, u)?;
    let rhs = &cocycle_value(s, t)? * &cocycle_value(&(s + t), u)?;
    Ok(lhs == rhs)
}

/// True iff the identity holds on every triple; mismatched lengths count as failures.
pub fn check_cocycle_identity(samples: &[Triple]) -> bool {
    samples
        .iter()
        .all(|(s, t, u)| cocycle_identity_holds(s, t, u).unwrap_or(false))
}

/// All `(e_i, e_j, e_k)` for `i, j, k` in `1..=n`.
pub fn basis_triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::with_capacity(n * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                out.push((Content::unit(n, i), Content::unit(n, j), Content::unit(n, k)));
            }
        }
    }
    out
}

/// `count` triples with entries uniform in `-bound..=bound`.
pub fn sample_triples(n: usize, count: usize, bound: i64, seed: u64) -> Vec<Triple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vec = |rng: &mut ChaCha8Rng| Content((0..n).map(|_| rng.gen_range(-bound..=bound)).collect());
    (0..count)
        .map(|_| (vec(&mut rng), vec(&mut rng), vec(&mut rng)))
        .collect()
}

/// Exhaustive basis triples for `n <= 5` and `samples` seeded triples in `{-3..3}^4`.
pub fn verify_cocycle_identity(samples: usize, seed: u64) -> Report {
    let mut report = Report::new();
    for n in 1..=5 {
        let triples = basis_triples(n);
        report.push(Check::expect(
            "cocycle-identity-basis",
            json!({ "n": n, "triples": triples.len() }),
            check_cocycle_identity(&triples),
            || format!("identity fails on a basis triple for n = {n}"),
        ));
    }
    let triples = sample_triples(4, samples, 3, seed);
    let failing = triples
        .iter()
        .find(|(s, t, u)| !cocycle_identity_holds(s, t, u).unwrap_or(false));
    report.push(Check::expect(
        "cocycle-identity-samples",
        json!({ "n": 4, "triples": samples, "seed": seed }),
        failing.is_none(),
        || {
            let (s, t, u) = failing.expect("failing triple");
            format!("s = {s}, t = {t}, u = {u}")
        },
    ));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_power;
    use proptest::prelude::*;

    fn c(v: &[i64]) -> Content {
        Content(v.to_vec())
    }

    #[test]
    fn value_table() {
        // x_{i,n-m} has content e(n) - e(m+1-i), y has e(1) + ... + e(m); m = 2, n = 4
        let x1 = c(&[0, -1, 0, 1]);
        let x2 = c(&[-1, 0, 0, 1]);
        let y = c(&[1, 1, 0, 0]);
        assert_eq!(cocycle_value(&x1, &y).unwrap(), q_power(2, 2));
        assert_eq!(cocycle_value(&x1, &x2).unwrap(), p_power(-1));
        assert_eq!(cocycle_value(&x2, &x2).unwrap(), p_power(-1));
        assert!(cocycle_value(&c(&[1, 0, -1, 0]), &c(&[3, 1, 1, 7])).unwrap().is_one());
        assert_eq!(cocycle_value(&x1, &c(&[1, 1, 1])), Err(Error::LengthMismatch(4, 3)));
    }

    #[test]
    fn identity_on_basis_and_samples() {
        for n in 1..=5 {
            assert!(check_cocycle_identity(&basis_triples(n)));
        }
        assert!(check_cocycle_identity(&[(
            Content::zero(4),
            Content::zero(4),
            Content::zero(4)
        )]));
        let samples = sample_triples(4, 200, 3, 7);
        assert_eq!(samples.len(), 200);
        assert!(check_cocycle_identity(&samples));
        assert_eq!(samples, sample_triples(4, 200, 3, 7));
    }

    proptest! {
        #[test]
        fn identity_random(v in proptest::collection::vec(-5i64..=5, 15)) {
            let (s, t, u) = (c(&v[0..5]), c(&v[5..10]), c(&v[10..15]));
            prop_assert!(cocycle_identity_holds(&s, &t, &u).unwrap());
            // bilinearity in the first argument
            let lhs = cocycle_value(&(&s + &t), &u).unwrap();
            let rhs = &cocycle_value(&s, &u).unwrap() * &cocycle_value(&t, &u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
