//! Row-style Hermite normal form over any [`IntegerScalar`].
//!
//! Convention: rows are sorted by strictly increasing pivot column, every
//! entry left of a pivot is zero, pivots are positive and every entry above
//! a pivot lies in `[0, pivot)`. Two lattices are equal iff their bases are
//! identical.

use crate::error::{Error, Result};
use crate::scalar::IntegerScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerLattice<T> {
    dim: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

/// Canonical HNF of the row span of `rows`.
pub fn hnf<T: IntegerScalar, I: IntoIterator<Item = Vec<T>>>(dim: usize, rows: I) -> IntegerLattice<T> {
    IntegerLattice::from_rows(dim, rows)
}

// Rows inserted between two normalization passes.
const NORMALIZE_EVERY: usize = 16;

impl<T: IntegerScalar> IntegerLattice<T> {
    pub fn zero(dim: usize) -> Self {
        IntegerLattice { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = Vec<T>>>(dim: usize, rows: I) -> Self {
        let mut lattice = Self::zero(dim);
        lattice.extend(rows);
        lattice
    }

    /// Adds generators and restores canonical form.
    pub fn extend<I: IntoIterator<Item = Vec<T>>>(&mut self, rows: I) {
        for (n, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), self.dim, "row length does not match the ambient dimension");
            self.insert(row);
            if n % NORMALIZE_EVERY == NORMALIZE_EVERY - 1 {
                self.normalize();
            }
        }
        self.normalize();
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Echelon insertion: keeps rows triangular but not yet reduced.
    fn insert(&mut self, mut v: Vec<T>) {
        let mut i = 0;
        loop {
            let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
                return;
            };
            while i < self.pivots.len() && self.pivots[i] < lead {
                i += 1;
            }
            if i == self.pivots.len() || self.pivots[i] > lead {
                if v[lead].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                self.rows.insert(i, v);
                self.pivots.insert(i, lead);
                return;
            }
            let a = self.rows[i][lead].clone();
            let b = v[lead].clone();
            if b.is_multiple_of(&a) {
                let q = b / a;
                axpy(&mut v, &-q, &self.rows[i]);
            } else {
                // [row; v] ← [[s, t], [-b/g, a/g]] [row; v]
                let e = a.extended_gcd(&b);
                let (mut g, mut s, mut t) = (e.gcd, e.x, e.y);
                if g.is_negative() {
                    g = -g;
                    s = -s;
                    t = -t;
                }
                let row = &self.rows[i];
                let new_row: Vec<T> = row
                    .iter()
                    .zip(&v)
                    .map(|(r, x)| s.clone() * r.clone() + t.clone() * x.clone())
                    .collect();
                let (ag, bg) = (a / g.clone(), b / g);
                let new_v: Vec<T> = row
                    .iter()
                    .zip(&v)
                    .map(|(r, x)| ag.clone() * x.clone() - bg.clone() * r.clone())
                    .collect();
                self.rows[i] = new_row;
                v = new_v;
            }
            i += 1;
        }
    }

    /// Reduces every entry above a pivot into `[0, pivot)`.
    fn normalize(&mut self) {
        for i in 0..self.rows.len() {
            let c = self.pivots[i];
            let p = self.rows[i][c].clone();
            let (above, below) = self.rows.split_at_mut(i);
            let row = &below[0];
            for other in above.iter_mut() {
                let q = other[c].div_floor(&p);
                if !q.is_zero() {
                    axpy(other, &-q, row);
                }
            }
        }
    }

    /// Integer coefficients `c` with `Σ cᵢ·basisᵢ = x`, or `None` when `x`
    /// is outside the lattice.
    pub fn membership(&self, x: &[T]) -> Option<Vec<T>> {
        assert_eq!(x.len(), self.dim, "vector length does not match the ambient dimension");
        let mut r = x.to_vec();
        let mut cert = Vec::with_capacity(self.rows.len());
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if r[..c].iter().any(|v| !v.is_zero()) {
                return None;
            }
            let (q, rem) = r[c].div_rem(&row[c]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                axpy(&mut r, &-q.clone(), row);
            }
            cert.push(q);
        }
        r.iter().all(|v| v.is_zero()).then_some(cert)
    }

    pub fn contains(&self, x: &[T]) -> bool {
        self.membership(x).is_some()
    }

    pub fn check_dim(&self, x: &[T]) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim, got: x.len() })
        }
    }

    /// `Σ cᵢ·basisᵢ`.
    pub fn combine(&self, coeffs: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            axpy(&mut out, c, row);
        }
        out
    }

    pub fn contains_lattice(&self, other: &IntegerLattice<T>) -> bool {
        other.dim == self.dim && other.rows.iter().all(|r| self.contains(r))
    }

    /// Canonical coset representative of `x` modulo the lattice: pivot
    /// coordinates are brought into `[0, pivot)`.
    pub fn reduce(&self, x: &[T]) -> Vec<T> {
        let mut r = x.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = r[c].div_floor(&row[c]);
            if !q.is_zero() {
                axpy(&mut r, &-q, row);
            }
        }
        r
    }

    /// Product of pivots: the index in ℤ^dim when the rank is full.
    pub fn pivot_product(&self) -> T {
        self.rows.iter().zip(&self.pivots).fold(T::one(), |acc, (r, &c)| acc * r[c].clone())
    }
}

/// `y ← y + a·x`
pub(crate) fn axpy<T: IntegerScalar>(y: &mut [T], a: &T, x: &[T]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + a.clone() * xi.clone();
        }
    }
}
