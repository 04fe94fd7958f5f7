use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

/// A subspace of `F^dim` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSubspace<F> {
    dim: usize,
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

pub fn rational_span<F: FieldScalar, I: IntoIterator<Item = Vec<F>>>(dim: usize, rows: I) -> RationalSubspace<F> {
    let mut s = RationalSubspace::zero(dim);
    for r in rows {
        s.insert(r);
    }
    s
}

impl<F: FieldScalar> RationalSubspace<F> {
    pub fn zero(dim: usize) -> Self {
        RationalSubspace { dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residual of `x` after elimination against the basis.
    fn residual(&self, x: &[F]) -> Vec<F> {
        let mut r = x.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !r[c].is_zero() {
                let f = r[c].clone();
                for (a, b) in r.iter_mut().zip(row) {
                    *a = a.clone() - f.clone() * b.clone();
                }
            }
        }
        r
    }

    pub fn contains(&self, x: &[F]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.residual(x).iter().all(F::is_zero)
    }

    /// Returns whether the dimension grew.
    pub fn insert(&mut self, x: Vec<F>) -> bool {
        assert_eq!(x.len(), self.dim);
        let mut r = self.residual(&x);
        let Some(c) = r.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let p = r[c].clone();
        r.iter_mut().for_each(|v| *v = v.clone() / p.clone());
        for row in self.rows.iter_mut() {
            if !row[c].is_zero() {
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(&r) {
                    *a = a.clone() - f.clone() * b.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, r);
        self.pivots.insert(at, c);
        true
    }

    pub fn contains_subspace(&self, other: &RationalSubspace<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Solves `A x = b` for square `A`; `None` when singular.
pub fn solve<F: FieldScalar>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Option<Vec<F>>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }
    for col in 0..n {
        let Some(piv) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return Ok(None);
        };
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone() / p.clone();
                let (pivot_row, target) = if i < col {
                    let (lo, hi) = a.split_at_mut(col);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = a.split_at_mut(i);
                    (&lo[col], &mut hi[0])
                };
                for (x, y) in target.iter_mut().zip(pivot_row).skip(col) {
                    *x = x.clone() - f.clone() * y.clone();
                }
                b[i] = b[i].clone() - f * b[col].clone();
            }
        }
    }
    Ok(Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect()))
}
