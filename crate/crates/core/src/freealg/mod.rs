//! Degree-truncated tensor, symmetric and free Lie algebras on `V = Q^q`.
//!
//! `T_n = V^{⊗n}` has the words of length `n` as basis, indexed in base `q` with
//! the first letter most significant.

use crate::error::{Error, Result};
use crate::exactlin::{colspace_basis, rank, Integer, RatMatrix, Rational, Scalar};
use crate::excat::Obj;

/// Largest degree accepted by the symmetric and Lie constructions.
pub const DEFAULT_DEGREE_BOUND: usize = 6;

fn check_bound(d: usize) -> Result<()> {
    if d > DEFAULT_DEGREE_BOUND {
        return Err(Error::Precondition(format!(
            "degree {d} exceeds the bound {DEFAULT_DEGREE_BOUND}"
        )));
    }
    Ok(())
}

/// Pieces `0..=d` of a graded subquotient of `T(V)`, each with a map into `T_n`.
#[derive(Clone, Debug)]
pub struct GradedTruncation {
    pub base_dim: usize,
    pub max_degree: usize,
    pub pieces: Vec<Obj>,
    /// `q^n × dim piece_n`, injective.
    pub embeddings: Vec<RatMatrix>,
}

impl GradedTruncation {
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(Obj::gens).collect()
    }
}

pub fn word_count(q: usize, n: usize) -> usize {
    q.pow(n as u32)
}

pub fn word_index(q: usize, word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &c| acc * q + c)
}

pub fn word_of(q: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut w = vec![0; n];
    for k in (0..n).rev() {
        w[k] = index % q;
        index /= q;
    }
    w
}

/// Product `T_m ⊗ T_n → T_{m+n}` on basis words: concatenation.
pub fn tensor_product_index(q: usize, n: usize, a: usize, b: usize) -> usize {
    a * word_count(q, n) + b
}

pub fn tensor_algebra_trunc(q: usize, d: usize) -> GradedTruncation {
    GradedTruncation {
        base_dim: q,
        max_degree: d,
        pieces: (0..=d).map(|n| Obj::vect(word_count(q, n))).collect(),
        embeddings: (0..=d)
            .map(|n| RatMatrix::identity(word_count(q, n)))
            .collect(),
    }
}

/// `A^{⊗n}: T_n(V) → T_n(W)` for `A: V → W`.
pub fn tensor_power_map(a: &RatMatrix, n: usize) -> RatMatrix {
    (0..n).fold(RatMatrix::identity(1), |acc, _| acc.kron(a))
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 0..=k {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `S_n = T_n / (σx − x)` with the quotient `π` and the averaging section `ρ_S`.
#[derive(Clone, Debug)]
pub struct SymmetricTrunc {
    /// Embeddings are the sections `ρ_S`.
    pub graded: GradedTruncation,
    /// `π_n: T_n → S_n`.
    pub projections: Vec<RatMatrix>,
    /// Sorted words representing the basis of `S_n`.
    pub monomials: Vec<Vec<Vec<usize>>>,
}

impl SymmetricTrunc {
    pub fn section(&self, n: usize) -> &RatMatrix {
        &self.graded.embeddings[n]
    }

    /// `π ∘ ρ_S = id` in every degree.
    pub fn section_identity_holds(&self) -> bool {
        (0..=self.graded.max_degree).all(|n| self.projections[n].mul(self.section(n)).is_identity())
    }

    /// `π` coequalizes every permutation of tensor factors (checked on adjacent
    /// transpositions, which generate).
    pub fn is_coinvariant_quotient(&self) -> bool {
        let q = self.graded.base_dim;
        (0..=self.graded.max_degree).all(|n| {
            let p = &self.projections[n];
            (0..n.saturating_sub(1)).all(|k| {
                (0..word_count(q, n)).all(|i| {
                    let mut w = word_of(q, n, i);
                    w.swap(k, k + 1);
                    p.column(i) == p.column(word_index(q, &w))
                })
            })
        })
    }

    /// `S_n(A) = π_W ∘ A^{⊗n} ∘ ρ_V`.
    pub fn induced_map(
        a: &RatMatrix,
        n: usize,
        sv: &SymmetricTrunc,
        sw: &SymmetricTrunc,
    ) -> RatMatrix {
        sw.projections[n]
            .mul(&tensor_power_map(a, n))
            .mul(sv.section(n))
    }
}

pub fn symmetric_trunc(q: usize, d: usize) -> Result<SymmetricTrunc> {
    check_bound(d)?;
    let mut pieces = Vec::new();
    let mut sections = Vec::new();
    let mut projections = Vec::new();
    let mut monomials = Vec::new();
    for n in 0..=d {
        let words = word_count(q, n);
        let mut reps: Vec<Vec<usize>> = (0..words)
            .map(|i| {
                let mut w = word_of(q, n, i);
                w.sort();
                w
            })
            .collect();
        reps.sort();
        reps.dedup();
        let pos = |w: &[usize]| {
            let mut s = w.to_vec();
            s.sort();
            reps.binary_search(&s).unwrap()
        };
        let mut pi = RatMatrix::zeros(reps.len(), words);
        for i in 0..words {
            pi.set(pos(&word_of(q, n, i)), i, Rational::one());
        }
        let perms = all_permutations(n);
        let weight = Rational::new(Integer::one(), Integer::new(perms.len() as i64));
        let mut rho = RatMatrix::zeros(words, reps.len());
        for (k, w) in reps.iter().enumerate() {
            for p in &perms {
                let permuted: Vec<usize> = p.iter().map(|&j| w[j]).collect();
                let i = word_index(q, &permuted);
                let v = rho.get(i, k).add_ref(&weight);
                rho.set(i, k, v);
            }
        }
        pieces.push(Obj::vect(reps.len()));
        sections.push(rho);
        projections.push(pi);
        monomials.push(reps);
    }
    Ok(SymmetricTrunc {
        graded: GradedTruncation {
            base_dim: q,
            max_degree: d,
            pieces,
            embeddings: sections,
        },
        projections,
        monomials,
    })
}

/// `[x, y] = x ⊗ y − y ⊗ x` for `x ∈ T_m`, `y ∈ T_n` given as coordinate columns.
pub fn bracket(q: usize, m: usize, x: &[Rational], n: usize, y: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); word_count(q, m + n)];
    for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let c = xa.mul_ref(yb);
            let i = tensor_product_index(q, n, a, b);
            out[i] = out[i].add_ref(&c);
            let j = tensor_product_index(q, m, b, a);
            out[j] = out[j].sub_ref(&c);
        }
    }
    out
}

fn letter(q: usize, c: usize) -> Vec<Rational> {
    (0..q)
        .map(|k| {
            if k == c {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// `θ_n(x_1 ⋯ x_n) = [⋯[[x_1, x_2], x_3], …, x_n]`, as a `q^n × q^n` matrix.
pub fn bracketing_map(q: usize, n: usize) -> RatMatrix {
    let words = word_count(q, n);
    let mut out = RatMatrix::zeros(words, words);
    for i in 0..words {
        let w = word_of(q, n, i);
        if n == 0 {
            out.set(0, 0, Rational::one());
            continue;
        }
        let mut acc = letter(q, w[0]);
        for (k, &c) in w.iter().enumerate().skip(1) {
            acc = bracket(q, k, &acc, 1, &letter(q, c));
        }
        for (r, v) in acc.into_iter().enumerate() {
            out.set(r, i, v);
        }
    }
    out
}

/// `L_1 = V` and `L_{r+1} = [V, L_r]`, as column spaces in `T`.
#[derive(Clone, Debug)]
pub struct FreeLieTrunc {
    pub graded: GradedTruncation,
}

impl FreeLieTrunc {
    pub fn basis(&self, n: usize) -> &RatMatrix {
        &self.graded.embeddings[n]
    }

    /// `(1/n) θ_n` restricted to `L_n` is the identity, for `1 ≤ n ≤ d`.
    pub fn normalized_section_holds(&self) -> bool {
        let q = self.graded.base_dim;
        (1..=self.graded.max_degree).all(|n| {
            let b = self.basis(n);
            let theta =
                bracketing_map(q, n).scale(&Rational::new(Integer::one(), Integer::new(n as i64)));
            theta.mul(b) == *b
        })
    }
}

pub fn free_lie_trunc(q: usize, d: usize) -> Result<FreeLieTrunc> {
    check_bound(d)?;
    let mut bases = vec![RatMatrix::zeros(1, 0)];
    if d >= 1 {
        bases.push(RatMatrix::identity(q));
    }
    for n in 2..=d {
        let prev = &bases[n - 1];
        let mut cols = Vec::new();
        for c in 0..q {
            for k in 0..prev.cols() {
                cols.push(bracket(q, 1, &letter(q, c), n - 1, &prev.column(k)));
            }
        }
        let rows = word_count(q, n);
        let cand = RatMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i].clone());
        bases.push(colspace_basis(&cand));
    }
    debug_assert!(bases.iter().all(|b| rank(b) == b.cols()));
    Ok(FreeLieTrunc {
        graded: GradedTruncation {
            base_dim: q,
            max_degree: d,
            pieces: bases.iter().map(|b| Obj::vect(b.cols())).collect(),
            embeddings: bases,
        },
    })
}

/// Coefficients of `Π_{n=1}^{d} (1 − t^n)^{−e_n}` through `t^d`.
pub fn euler_product(exponents: &[usize], d: usize) -> Vec<i128> {
    let mut series = vec![0i128; d + 1];
    series[0] = 1;
    for (n, &e) in exponents.iter().enumerate().skip(1) {
        for _ in 0..e {
            // Multiply by 1 / (1 − t^n).
            for k in n..=d {
                series[k] += series[k - n];
            }
        }
    }
    series
}

/// `Π (1 − t^n)^{−dim L_n} = Σ q^n t^n` through degree `d`.
pub fn pbw_dimension_check(q: usize, d: usize) -> Result<bool> {
    let lie = free_lie_trunc(q, d)?;
    let series = euler_product(&lie.graded.dims(), d);
    Ok(series
        .iter()
        .enumerate()
        .all(|(n, &c)| c == (q as i128).pow(n as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;

    #[test]
    fn tensor_dims_and_products() {
        assert_eq!(tensor_algebra_trunc(2, 3).dims(), vec![1, 2, 4, 8]);
        assert_eq!(tensor_algebra_trunc(0, 2).dims(), vec![1, 0, 0]);
        let q = 3;
        for (a, b, c) in [(1usize, 2usize, 0usize), (5, 7, 2), (26, 0, 8)] {
            let ab_c = tensor_product_index(q, 2, tensor_product_index(q, 3, a, b), c);
            let a_bc = tensor_product_index(q, 5, a, tensor_product_index(q, 2, b, c));
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn symmetric_pieces() {
        let s = symmetric_trunc(2, 3).unwrap();
        assert_eq!(s.graded.dims()[3], 4);
        let s = symmetric_trunc(1, 5).unwrap();
        assert!(s.graded.dims().iter().all(|&k| k == 1));
        let s = symmetric_trunc(3, 4).unwrap();
        assert!(s.section_identity_holds());
        assert!(s.is_coinvariant_quotient());
        for n in 0..=4 {
            assert_eq!(s.graded.dims()[n], binomial(3 + n - 1, n));
        }
        assert!(symmetric_trunc(2, 7).is_err());
    }

    #[test]
    fn lie_pieces() {
        let l = free_lie_trunc(2, 5).unwrap();
        assert_eq!(l.graded.dims(), vec![0, 2, 1, 2, 3, 6]);
        assert!(l.normalized_section_holds());
        let l = free_lie_trunc(1, 4).unwrap();
        assert_eq!(l.graded.dims(), vec![0, 1, 0, 0, 0]);
        let l = free_lie_trunc(3, 5).unwrap();
        assert_eq!(l.graded.dims(), vec![0, 3, 3, 8, 18, 48]);
    }

    #[test]
    fn pbw() {
        assert!(pbw_dimension_check(2, 4).unwrap());
        assert!(pbw_dimension_check(1, 5).unwrap());
        assert!(pbw_dimension_check(3, 3).unwrap());
        assert_eq!(euler_product(&[0, 2, 0], 2), vec![1, 2, 3]);
    }
}
