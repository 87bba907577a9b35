//! Smith normal form and the integer linear algebra built on it.

use super::matrix::IntMatrix;
use super::scalar::{Integer, Scalar};
use crate::error::{Error, Result};

/// `u · a · v = d`, with the inverses of `u` and `v` carried along.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    pub fn invariant_factors(&self) -> Vec<Integer> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    /// `row[i] += c * row[j]`.
    fn row_add(&mut self, i: usize, j: usize, c: &Integer) {
        self.a.add_row_multiple(i, j, c);
        self.u.add_row_multiple(i, j, c);
        self.u_inv.add_col_multiple(j, i, &c.neg_ref());
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// `col[i] += c * col[j]`.
    fn col_add(&mut self, i: usize, j: usize, c: &Integer) {
        self.a.add_col_multiple(i, j, c);
        self.v.add_col_multiple(i, j, c);
        self.v_inv.add_row_multiple(j, i, &c.neg_ref());
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn min_abs_in(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.a.shape();
        let mut best: Option<(usize, usize, Integer)> = None;
        for i in t..m {
            for j in t..n {
                let e = self.a.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let ab = e.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ab < *b) {
                    let one = ab.is_one();
                    best = Some((i, j, ab));
                    if one {
                        return best.map(|(i, j, _)| (i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }
}

/// Unimodular `u`, `v` with `u a v` diagonal, nonnegative and with each diagonal
/// entry dividing the next. Pivots are chosen by minimal absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = a.shape();
    let mut w = Work {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut rank = 0;
    for t in 0..m.min(n) {
        let Some((pi, pj)) = w.min_abs_in(t) else {
            break;
        };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(w.a.get(t, t));
                w.row_add(i, t, &q.neg_ref());
                if !w.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(w.a.get(t, t));
                w.col_add(j, t, &q.neg_ref());
                if !w.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                let pivot_abs = w.a.get(t, t).abs();
                let mut best: Option<(bool, usize, Integer)> = None;
                for i in t + 1..m {
                    let e = w.a.get(i, t);
                    if !e.is_zero()
                        && e.abs() < best.as_ref().map_or(pivot_abs.clone(), |b| b.2.clone())
                    {
                        best = Some((true, i, e.abs()));
                    }
                }
                for j in t + 1..n {
                    let e = w.a.get(t, j);
                    if !e.is_zero()
                        && e.abs() < best.as_ref().map_or(pivot_abs.clone(), |b| b.2.clone())
                    {
                        best = Some((false, j, e.abs()));
                    }
                }
                match best {
                    Some((true, i, _)) => w.row_swap(t, i),
                    Some((false, j, _)) => w.col_swap(t, j),
                    None => {}
                }
                continue;
            }
            let p = w.a.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !p.divides(w.a.get(i, j))));
            match bad {
                Some(i) => w.row_add(t, i, &Integer::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.row_negate(t);
        }
        rank += 1;
    }
    SmithDecomposition {
        u: w.u,
        d: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        rank,
    }
}

/// Some `x` with `a x ≡ b` row-wise modulo `moduli` (0 meaning over the integers).
pub fn solve_int_linear(
    a: &IntMatrix,
    b: &IntMatrix,
    moduli: &[Integer],
) -> Result<Option<IntMatrix>> {
    if a.rows() != b.rows() || moduli.len() != a.rows() {
        return Err(Error::Dimension(format!(
            "solve_int_linear: a is {}x{}, b is {}x{}, {} moduli",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            moduli.len()
        )));
    }
    let n = a.cols();
    let aug = with_modulus_columns(a, moduli);
    let s = smith_normal_form(&aug);
    let ub = s.u.mul(b);
    let mut w = IntMatrix::zeros(aug.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..ub.rows() {
            let e = ub.get(i, j);
            if i < s.rank {
                let d = s.d.get(i, i);
                if !d.divides(e) {
                    return Ok(None);
                }
                w.set(i, j, e.div_exact(d));
            } else if !e.is_zero() {
                return Ok(None);
            }
        }
    }
    let x = s.v.mul(&w);
    Ok(Some(x.submatrix(0..n, 0..b.cols())))
}

fn with_modulus_columns(a: &IntMatrix, moduli: &[Integer]) -> IntMatrix {
    let nz: Vec<usize> = (0..moduli.len())
        .filter(|&i| !moduli[i].is_zero())
        .collect();
    let mut extra = IntMatrix::zeros(a.rows(), nz.len());
    for (k, &i) in nz.iter().enumerate() {
        extra.set(i, k, moduli[i].clone());
    }
    a.hstack(&extra)
}

/// Basis (as columns) of the lattice spanned by the columns of `s`.
pub fn lattice_basis(s: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(s);
    let cols: Vec<IntMatrix> = (0..snf.rank)
        .map(|t| {
            let c = IntMatrix::column_vector(snf.u_inv.column(t));
            c.scale(snf.d.get(t, t))
        })
        .collect();
    IntMatrix::hstack_all(s.rows(), &cols)
}

/// Basis of `{x ∈ Z^n : a x ≡ 0 mod moduli}`.
pub fn kernel_lattice(a: &IntMatrix, moduli: &[Integer]) -> IntMatrix {
    let n = a.cols();
    let aug = with_modulus_columns(a, moduli);
    let s = smith_normal_form(&aug);
    let span = s.v.submatrix(0..n, s.rank..aug.cols());
    lattice_basis(&span)
}

/// Columns of `v` past the rank: a basis of the saturated integer kernel of `a`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(a);
    s.v.submatrix(0..a.cols(), s.rank..a.cols())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        let diag: Vec<Integer> = (0..a.rows().min(a.cols()))
            .map(|i| s.d.get(i, i).clone())
            .collect();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check(&im(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.d, im(&[&[1, 0], &[0, 6]]));
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        let s = check(&im(&[&[2]]));
        assert_eq!(s.d, im(&[&[2]]));
        let s = check(&im(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(
            s.invariant_factors(),
            vec![Integer::new(2), Integer::new(6), Integer::new(12)]
        );
        check(&IntMatrix::zeros(2, 3));
        check(&IntMatrix::zeros(0, 2));
    }

    #[test]
    fn int_solve_examples() {
        let z = [Integer::zero()];
        let x = solve_int_linear(&im(&[&[2]]), &im(&[&[4]]), &z).unwrap();
        assert_eq!(x, Some(im(&[&[2]])));
        assert_eq!(
            solve_int_linear(&im(&[&[2]]), &im(&[&[1]]), &z).unwrap(),
            None
        );
        let x = solve_int_linear(&im(&[&[2]]), &im(&[&[0]]), &[Integer::new(4)])
            .unwrap()
            .unwrap();
        assert!(x
            .get(0, 0)
            .mul_ref(&Integer::new(2))
            .mod_floor(&Integer::new(4))
            .is_zero());
        let x = solve_int_linear(&im(&[&[2]]), &im(&[&[1]]), &[Integer::new(3)])
            .unwrap()
            .unwrap();
        assert_eq!(
            x.get(0, 0)
                .mul_ref(&Integer::new(2))
                .mod_floor(&Integer::new(3)),
            Integer::one()
        );
        assert!(solve_int_linear(&im(&[&[1]]), &im(&[&[1], &[1]]), &z).is_err());
    }

    #[test]
    fn lattices() {
        let k = kernel_lattice(&im(&[&[1]]), &[Integer::new(2)]);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.get(0, 0).abs(), Integer::new(2));
        let k = integer_kernel(&im(&[&[1, 1]]));
        assert_eq!(k.cols(), 1);
        assert!(im(&[&[1, 1]]).mul(&k).is_zero());
        let b = lattice_basis(&im(&[&[2, 4], &[0, 0]]));
        assert_eq!(b.cols(), 1);
    }

    fn int_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..10, r * c).prop_map(move |v| {
                IntMatrix::from_vec(r, c, v.into_iter().map(Integer::new).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants(a in int_matrix()) {
            check(&a);
        }

        #[test]
        fn modular_solutions_verify(a in int_matrix(), seed in proptest::collection::vec(-9i64..10, 5), m in proptest::collection::vec(0i64..6, 5)) {
            let moduli: Vec<Integer> = (0..a.rows()).map(|i| Integer::new(if m[i] == 1 { 0 } else { m[i] })).collect();
            let b = IntMatrix::column_vector((0..a.rows()).map(|i| Integer::new(seed[i])).collect());
            if let Some(x) = solve_int_linear(&a, &b, &moduli).unwrap() {
                let diff = a.mul(&x).sub(&b);
                for i in 0..a.rows() {
                    prop_assert!(moduli[i].divides(diff.get(i, 0)) || (moduli[i].is_zero() && diff.get(i, 0).is_zero()));
                }
            }
            // Anything in the image is solvable.
            let x0 = IntMatrix::column_vector((0..a.cols()).map(|j| Integer::new(seed[j] % 3)).collect());
            let b0 = a.mul(&x0);
            prop_assert!(solve_int_linear(&a, &b0, &moduli).unwrap().is_some());
        }
    }
}
