use num_rational::Ratio;

use super::element::GroupRingElement;
use super::rational::solve;
use crate::scalar::IntegerScalar;

/// The two-sided inverse of `u` in the group ring, if it has integral
/// coefficients.
///
/// Solves `u·v = 1` for the matrix of left multiplication by `u`, accepts
/// only an integral solution and re-checks both products.
pub fn inverse_in_ring<T: IntegerScalar>(u: &GroupRingElement<T>) -> Option<GroupRingElement<T>> {
    let g = u.group();
    let n = g.order();
    // (u·v)_k = Σ_j u_{k j⁻¹} v_j
    let dense = u.to_dense();
    let matrix: Vec<Vec<T>> = (0..n).map(|k| (0..n).map(|j| dense[g.mul(k, g.inv(j))].clone()).collect()).collect();
    let x = match fraction_free_solve(matrix.clone()) {
        Solved::Integral(x) => x,
        Solved::Fractional | Solved::Singular => return None,
        Solved::Inexact => rational_solve(matrix)?,
    };
    let v = GroupRingElement::from_dense(g, x);
    ((u * &v).is_one() && (&v * u).is_one()).then_some(v)
}

enum Solved<T> {
    Integral(Vec<T>),
    Fractional,
    Singular,
    /// A Bareiss division left a remainder; never expected, handled anyway.
    Inexact,
}

/// Fraction-free Gauss–Jordan on `[A | e₀]`: every entry stays an integer
/// minor, the diagonal ends as `det A` and the last column as `det A · x`.
fn fraction_free_solve<T: IntegerScalar>(mut a: Vec<Vec<T>>) -> Solved<T> {
    let n = a.len();
    for (i, row) in a.iter_mut().enumerate() {
        row.push(if i == 0 { T::one() } else { T::zero() });
    }
    let mut prev = T::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Solved::Singular;
        };
        a.swap(k, p);
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in k + 1..=n {
                let num = pivot_row[k].clone() * row[j].clone() - factor.clone() * pivot_row[j].clone();
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Solved::Inexact;
                }
                row[j] = q;
            }
            row[k] = T::zero();
            if i < k {
                row[i] = pivot_row[k].clone();
            }
        }
        prev = pivot_row[k].clone();
    }
    let det = prev;
    let mut x = Vec::with_capacity(n);
    for row in &a {
        let (q, r) = row[n].div_rem(&det);
        if !r.is_zero() {
            return Solved::Fractional;
        }
        x.push(q);
    }
    Solved::Integral(x)
}

fn rational_solve<T: IntegerScalar>(matrix: Vec<Vec<T>>) -> Option<Vec<T>> {
    let n = matrix.len();
    let m: Vec<Vec<Ratio<T>>> = matrix.into_iter().map(|r| r.into_iter().map(Ratio::from_integer).collect()).collect();
    let mut rhs = vec![Ratio::from_integer(T::zero()); n];
    rhs[0] = Ratio::from_integer(T::one());
    let x = solve(m, rhs).ok()??;
    x.iter().all(Ratio::is_integer).then(|| x.into_iter().map(|r| r.to_integer()).collect())
}
