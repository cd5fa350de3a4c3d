//! Fraction-free linear algebra over `Z[t, t^-1]`.
//!
//! Kernels are computed with a Bareiss-style Gauss-Jordan sweep: every
//! intermediate entry is a minor of the input, so each division by the previous
//! pivot is exact and no rational functions ever appear.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalar::LaurentScalar;

/// Dense `rows x cols` matrix of Laurent scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentScalar>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentScalar::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<LaurentScalar>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        let n = rows.len();
        Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentScalar::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[LaurentScalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[LaurentScalar]) -> Vec<LaurentScalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(LaurentScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Multiplies every row by a power of `t` so all entries are polynomials in `t`.
    fn clear_denominators(&mut self) {
        for i in 0..self.rows {
            let lo = self.row(i).iter().filter_map(LaurentScalar::min_exp).min().unwrap_or(0);
            if lo < 0 {
                for j in 0..self.cols {
                    let e = &mut self.entries[i * self.cols + j];
                    *e = e.shift(-lo);
                }
            }
        }
    }

    /// Fraction-free Gauss-Jordan in place; returns the pivot columns.
    ///
    /// On return the pivot block equals `d * I` where `d` is the last pivot.
    fn bareiss_gauss_jordan(&mut self) -> Vec<usize> {
        let mut prev = LaurentScalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.entries.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let piv = self[(r, c)].clone();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)].clone();
                for j in 0..self.cols {
                    let lhs = &piv * &self[(i, j)];
                    let rhs = if factor.is_zero() {
                        LaurentScalar::zero()
                    } else {
                        &factor * &self[(r, j)]
                    };
                    let num = lhs - rhs;
                    self[(i, j)] = num
                        .div_exact(&prev)
                        .expect("fraction-free elimination step must divide exactly");
                }
            }
            prev = piv;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Rank over the fraction field.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.clear_denominators();
        work.bareiss_gauss_jordan().len()
    }

    /// Pivot columns of the row echelon form (the lexicographically first
    /// maximal independent set of columns).
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut work = self.clone();
        work.clear_denominators();
        work.bareiss_gauss_jordan()
    }
}

impl std::ops::Index<(usize, usize)> for ScalarMatrix {
    type Output = LaurentScalar;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentScalar {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ScalarMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentScalar {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<_> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        f.debug_struct("ScalarMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &rows)
            .finish()
    }
}

/// Divides by the common monomial factor, then makes the first nonzero entry's
/// lowest coefficient positive.
pub fn canonicalize_vector(v: &mut [LaurentScalar]) {
    let mut g = BigInt::zero();
    let mut lo: Option<i64> = None;
    for x in v.iter() {
        if let Some((c, e)) = x.monomial_content() {
            g = num_integer::Integer::gcd(&g, &c);
            lo = Some(lo.map_or(e, |l| l.min(e)));
        }
    }
    let Some(lo) = lo else { return };
    let sign_neg = v
        .iter()
        .find(|x| !x.is_zero())
        .and_then(|x| x.lowest_term().map(|(_, c)| c.is_negative()))
        .unwrap_or(false);
    let divisor = if sign_neg { -g } else { g };
    let d = LaurentScalar::monomial(divisor, lo);
    for x in v.iter_mut() {
        *x = x.div_exact(&d).expect("monomial content divides every entry");
    }
}

/// Basis of the right kernel of `m`, each vector canonically scaled.
pub fn kernel_basis(m: &ScalarMatrix) -> Vec<Vec<LaurentScalar>> {
    let mut work = m.clone();
    work.clear_denominators();
    let pivots = work.bareiss_gauss_jordan();
    let d = match pivots.len() {
        0 => LaurentScalar::one(),
        k => work[(k - 1, pivots[k - 1])].clone(),
    };
    let mut basis = Vec::new();
    for f in (0..m.cols()).filter(|c| !pivots.contains(c)) {
        let mut v = vec![LaurentScalar::zero(); m.cols()];
        v[f] = d.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&work[(row, f)];
        }
        canonicalize_vector(&mut v);
        basis.push(v);
    }
    basis
}
