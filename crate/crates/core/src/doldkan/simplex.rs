//! Monotone maps between finite ordinals `[n] = {0, …, n}`.

use std::fmt;

use crate::error::{Error, Result};

/// A monotone map `[m] → [n]`, stored as its list of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monotone {
    pub target: usize,
    pub values: Vec<usize>,
}

impl Monotone {
    pub fn new(target: usize, values: Vec<usize>) -> Result<Monotone> {
        if values.is_empty()
            || values.windows(2).any(|w| w[0] > w[1])
            || values.iter().any(|&v| v > target)
        {
            return Err(Error::Precondition(format!(
                "{values:?} is not a monotone map into [{target}]"
            )));
        }
        Ok(Monotone { target, values })
    }

    pub fn identity(n: usize) -> Monotone {
        Monotone {
            target: n,
            values: (0..=n).collect(),
        }
    }

    /// `δ^i: [n−1] → [n]`, skipping `i`.
    pub fn coface(n: usize, i: usize) -> Monotone {
        assert!(n >= 1 && i <= n);
        Monotone {
            target: n,
            values: (0..n).map(|k| if k < i { k } else { k + 1 }).collect(),
        }
    }

    /// `σ^i: [n+1] → [n]`, hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Monotone {
        assert!(i <= n);
        Monotone {
            target: n,
            values: (0..=n + 1)
                .map(|k| if k <= i { k } else { k - 1 })
                .collect(),
        }
    }

    /// `m` for a map out of `[m]`.
    pub fn source(&self) -> usize {
        self.values.len() - 1
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Monotone) -> Monotone {
        assert_eq!(other.target, self.source());
        Monotone {
            target: self.target,
            values: other.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// `self = ε ∘ η` with `η: [m] ↠ [q]` and `ε: [q] ↪ [n]`.
    pub fn epi_mono(&self) -> (Monotone, Monotone) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let q = image.len() - 1;
        let eta = Monotone {
            target: q,
            values: self
                .values
                .iter()
                .map(|v| image.binary_search(v).unwrap())
                .collect(),
        };
        let eps = Monotone {
            target: self.target,
            values: image,
        };
        (eta, eps)
    }

    /// For a non-identity surjection, `self = rest ∘ σ^j` with `j` the first
    /// repeated position.
    pub fn split_degeneracy(&self) -> Option<(usize, Monotone)> {
        let j = self.values.windows(2).position(|w| w[0] == w[1])?;
        let mut values = self.values.clone();
        values.remove(j + 1);
        Some((
            j,
            Monotone {
                target: self.target,
                values,
            },
        ))
    }
}

impl fmt::Display for Monotone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// A monotone surjection `[n] ↠ [p]`.
pub type MonotoneSurjection = Monotone;

/// All monotone surjections `[n] ↠ [p]` in lexicographic order of their values.
pub fn enumerate_surjections(n: usize, p: usize) -> Result<Vec<MonotoneSurjection>> {
    if p > n {
        return Err(Error::Precondition(format!("no surjection [{n}] -> [{p}]")));
    }
    // A surjection is fixed by the n − p positions k ≥ 1 where it does not step up.
    let mut out = Vec::new();
    let mut values = vec![0usize; n + 1];
    fn rec(k: usize, n: usize, p: usize, values: &mut Vec<usize>, out: &mut Vec<Monotone>) {
        if k > n {
            if values[n] == p {
                out.push(Monotone {
                    target: p,
                    values: values.clone(),
                });
            }
            return;
        }
        let prev = values[k - 1];
        for step in 0..=1 {
            let v = prev + step;
            if v <= p && p - v <= n - k {
                values[k] = v;
                rec(k + 1, n, p, values, out);
            }
        }
    }
    if n == 0 {
        return Ok(vec![Monotone::identity(0)]);
    }
    rec(1, n, p, &mut values, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::binomial;
    use proptest::prelude::*;

    #[test]
    fn small_listings() {
        let s = enumerate_surjections(2, 1).unwrap();
        assert_eq!(
            s.iter().map(|m| m.values.clone()).collect::<Vec<_>>(),
            vec![vec![0, 0, 1], vec![0, 1, 1]]
        );
        assert_eq!(enumerate_surjections(4, 0).unwrap().len(), 1);
        assert_eq!(
            enumerate_surjections(4, 4).unwrap(),
            vec![Monotone::identity(4)]
        );
        assert!(enumerate_surjections(1, 2).is_err());
    }

    #[test]
    fn cosimplicial_identities() {
        for n in 2..5 {
            for j in 0..=n {
                for i in 0..j {
                    let l = Monotone::coface(n, j).after(&Monotone::coface(n - 1, i));
                    let r = Monotone::coface(n, i).after(&Monotone::coface(n - 1, j - 1));
                    assert_eq!(l, r);
                }
            }
        }
        let s = Monotone::codegeneracy(2, 1);
        assert_eq!(s.after(&Monotone::coface(3, 1)), Monotone::identity(2));
        assert_eq!(s.after(&Monotone::coface(3, 2)), Monotone::identity(2));
    }

    proptest! {
        #[test]
        fn surjection_counts(n in 0usize..8, p in 0usize..8) {
            prop_assume!(p <= n);
            let s = enumerate_surjections(n, p).unwrap();
            prop_assert_eq!(s.len(), binomial(n, p));
            prop_assert!(s.windows(2).all(|w| w[0].values < w[1].values));
            prop_assert!(s.iter().all(|m| m.is_surjective() && m.source() == n));
        }

        #[test]
        fn epi_mono_recomposes(vals in proptest::collection::vec(0usize..4, 1..6)) {
            let mut v = vals;
            v.sort();
            let m = Monotone::new(4, v).unwrap();
            let (eta, eps) = m.epi_mono();
            prop_assert!(eta.is_surjective());
            prop_assert_eq!(eps.after(&eta), m);
        }
    }
}
