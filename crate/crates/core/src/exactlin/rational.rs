//! Gaussian elimination over the rationals.

use super::matrix::RatMatrix;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// Reduced row echelon form together with its strictly increasing pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        if inv != Rational::one() {
            for v in a.row_mut(r) {
                if !v.is_zero() {
                    *v = v.mul_ref(&inv);
                }
            }
        }
        for i in 0..rows {
            if i != r {
                let f = a.get(i, c).neg_ref();
                a.add_row_multiple(i, r, &f);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Columns form a basis of `{x : m x = 0}`, one per free column in increasing order.
pub fn nullspace_basis(m: &RatMatrix) -> RatMatrix {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = RatMatrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out.set(f, k, Rational::one());
        for (i, &p) in pivots.iter().enumerate() {
            out.set(p, k, r.get(i, f).neg_ref());
        }
    }
    out
}

/// A particular solution of `a x = b` with free variables set to zero, or `None`.
pub fn solve_linear(a: &RatMatrix, b: &RatMatrix) -> Result<Option<RatMatrix>> {
    if a.rows() != b.rows() {
        return Err(Error::Dimension(format!(
            "solve_linear: {} rows against {} rows",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(b));
    if pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = RatMatrix::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Ok(Some(x))
}

/// The pivot columns of `m`: a basis of its column space drawn from its own columns.
pub fn colspace_basis(m: &RatMatrix) -> RatMatrix {
    let (_, pivots) = rref(m);
    m.select_cols(&pivots)
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    if n == 0 {
        return Some(RatMatrix::zeros(0, 0));
    }
    let (r, pivots) = rref(&m.hstack(&RatMatrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(r.submatrix(0..n, n..2 * n))
}

/// Column space of `a` contained in the column space of `b`.
pub fn colspace_contains(b: &RatMatrix, a: &RatMatrix) -> bool {
    if a.cols() == 0 {
        return true;
    }
    rank(b) == rank(&b.hstack(a))
}

/// Basis of the intersection of two column spaces inside the same ambient space.
pub fn intersect_colspaces(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let k = nullspace_basis(&a.hstack(&b.neg()));
    let coeffs = k.submatrix(0..a.cols(), 0..k.cols());
    colspace_basis(&a.mul(&coeffs))
}

/// Extends independent columns `w` to a basis of `Q^n`; returns only the added columns,
/// chosen among standard basis vectors in increasing order.
pub fn complement_basis(w: &RatMatrix) -> RatMatrix {
    let n = w.rows();
    let full = w.hstack(&RatMatrix::identity(n));
    let (_, pivots) = rref(&full);
    let added: Vec<usize> = pivots.into_iter().filter(|&p| p >= w.cols()).collect();
    full.select_cols(&added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&RatMatrix::identity(2));
        assert_eq!((r, p), (RatMatrix::identity(2), vec![0, 1]));
        let (r, p) = rref(&rm(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, rm(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
        let (r, p) = rref(&RatMatrix::zeros(3, 2));
        assert!(r.is_zero() && p.is_empty());
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(nullspace_basis(&RatMatrix::identity(2)).cols(), 0);
        assert_eq!(nullspace_basis(&RatMatrix::zeros(2, 3)).cols(), 3);
        let k = nullspace_basis(&rm(&[&[1, 2]]));
        assert_eq!(k, rm(&[&[-2], &[1]]));
    }

    #[test]
    fn solve_examples() {
        let b = rm(&[&[3, -1], &[5, 7]]);
        assert_eq!(solve_linear(&RatMatrix::identity(2), &b).unwrap(), Some(b));
        let x = solve_linear(&rm(&[&[1, 1]]), &rm(&[&[3]]))
            .unwrap()
            .unwrap();
        assert_eq!(x.get(0, 0).add_ref(x.get(1, 0)), Rational::from(3));
        assert_eq!(
            solve_linear(&RatMatrix::zeros(1, 1), &rm(&[&[1]])).unwrap(),
            None
        );
        assert!(solve_linear(&rm(&[&[1]]), &rm(&[&[1], &[2]])).is_err());
    }

    #[test]
    fn subspace_helpers() {
        let a = rm(&[&[1, 0], &[0, 1], &[0, 0]]);
        let b = rm(&[&[0, 1], &[1, 1], &[0, 1]]);
        let i = intersect_colspaces(&a, &b);
        assert_eq!(i.cols(), 1);
        assert!(colspace_contains(&a, &i) && colspace_contains(&b, &i));
        let c = complement_basis(&rm(&[&[1], &[1], &[0]]));
        assert_eq!(c.cols(), 2);
        assert_eq!(rank(&rm(&[&[1], &[1], &[0]]).hstack(&c)), 3);
        let m = rm(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&inverse(&m).unwrap()), RatMatrix::identity(2));
        assert!(inverse(&rm(&[&[1, 2], &[2, 4]])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                RatMatrix::from_vec(r, c, v.into_iter().map(Rational::from).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_nullity(m in small_matrix()) {
            let (r, p) = rref(&m);
            prop_assert_eq!(rref(&r).0, r.clone());
            prop_assert!(p.windows(2).all(|w| w[0] < w[1]));
            let k = nullspace_basis(&m);
            prop_assert_eq!(p.len() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn solvable_iff_rank_agrees(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 5)) {
            let b = RatMatrix::column_vector(
                (0..m.rows()).map(|i| Rational::from(seed[i])).collect(),
            );
            let sol = solve_linear(&m, &b).unwrap();
            prop_assert_eq!(sol.is_some(), rank(&m) == rank(&m.hstack(&b)));
            if let Some(x) = sol {
                prop_assert_eq!(m.mul(&x), b);
            }
        }
    }
}
