use super::lattice::IntegerLattice;
use crate::error::{Error, Result};
use crate::scalar::IntegerScalar;

/// Invariant factors of `sup / sub`: nontrivial torsion factors in
/// divisibility order, then one `0` per free factor. Empty when equal.
pub fn smith_invariants<T: IntegerScalar>(
    sub: &IntegerLattice<T>,
    sup: &IntegerLattice<T>,
) -> Result<Vec<T>> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch { expected: sup.dim(), got: sub.dim() });
    }
    // coordinates of sub's basis in sup's basis
    let mut coords = Vec::with_capacity(sub.rank());
    for row in sub.basis() {
        coords.push(sup.membership(row).ok_or(Error::NotContained)?);
    }
    let diag = smith_diagonal(coords, sup.rank());
    let mut out: Vec<T> = diag.into_iter().filter(|d| !d.is_one()).collect();
    out.extend(std::iter::repeat_with(T::zero).take(sup.rank() - sub.rank()));
    Ok(out)
}

/// Nonzero diagonal of the Smith normal form, `d₁ | d₂ | …`.
pub fn smith_diagonal<T: IntegerScalar>(mut m: Vec<Vec<T>>, cols: usize) -> Vec<T> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&m, t, cols) else {
            break;
        };
        m.swap(t, pi);
        for r in m.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = m[i][t].div_floor(&p);
                    let (top, bottom) = m.split_at_mut(i);
                    for (x, y) in bottom[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x = x.clone() - q.clone() * y.clone();
                    }
                    dirty |= !m[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() {
                    let q = m[t][j].div_floor(&p);
                    for r in m[t..].iter_mut() {
                        r[j] = r[j].clone() - q.clone() * r[t].clone();
                    }
                    dirty |= !m[t][j].is_zero();
                }
            }
            if dirty {
                // a smaller remainder appeared in row/column t: move it to the pivot
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !m[i][t].is_zero() && m[i][t].abs() < m[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !m[t][j].is_zero() && m[t][j].abs() < m[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                m.swap(t, bi);
                for r in m.iter_mut() {
                    r.swap(t, bj);
                }
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let (top, bottom) = m.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&bottom[0][t..]) {
                        *x = x.clone() + y.clone();
                    }
                }
                None => break,
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

fn min_abs_entry<T: IntegerScalar>(m: &[Vec<T>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
