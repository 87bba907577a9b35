//! The Hom complex, homology, acyclicity, and homotopies.

use super::complex::{cone, sphere, ChainMap, Complex, Homotopy};
use crate::error::{Error, Result};
use crate::exactlin::{rank, IntMatrix, RatMatrix};
use crate::excat::{
    cokernel, direct_sum_in, factor_through_post, factor_through_pre, generator_family,
    is_admissible_epi, kernel, Biproduct, HomSpace, InstanceId, Mor, MorMatrix, MorSystem, Obj,
    Term,
};

/// `Hom(X, Y)` as a complex in the hom instance.
///
/// Degree `n` is `⊕_i Hom(X_i, Y_{i+n})` over `i` ascending, and elements are
/// indexed lexicographically by `(i, generator)`. The differential is
/// `df = d^Y ∘ f − (−1)^n f ∘ d^X`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub x: Complex,
    pub y: Complex,
    pub complex: Complex,
    degrees: Vec<HomDegree>,
}

#[derive(Clone, Debug)]
struct HomDegree {
    n: i64,
    /// `(i, Hom(X_i, Y_{i+n}))` for every `i` in the support of `X`.
    spaces: Vec<(i64, HomSpace)>,
    sum: Biproduct,
}

impl HomComplex {
    fn degree(&self, n: i64) -> Option<&HomDegree> {
        self.degrees.iter().find(|d| d.n == n)
    }

    /// The element of `Hom(X,Y)_n` for a family `f_i: X_i → Y_{i+n}` (missing entries zero).
    pub fn element(&self, n: i64, family: &[(i64, Mor)]) -> Mor {
        let u = Obj::unit(self.complex.instance());
        let target = self.complex.obj(n);
        let Some(deg) = self.degree(n) else {
            return Mor::zero(&u, target);
        };
        let one = direct_sum_in(u.instance(), std::slice::from_ref(&u));
        let m = one.block_mor(&deg.sum, |k, _| {
            let (i, h) = &deg.spaces[k];
            family
                .iter()
                .find(|(j, _)| j == i)
                .map(|(_, f)| h.element(f))
        });
        m.after(&one.inj[0])
    }

    /// The family `f_i: X_i → Y_{i+n}` named by an element `unit → Hom(X,Y)_n`.
    pub fn family(&self, n: i64, x: &Mor) -> Vec<(i64, Mor)> {
        let Some(deg) = self.degree(n) else {
            return vec![];
        };
        deg.spaces
            .iter()
            .enumerate()
            .map(|(k, (i, h))| (*i, h.morphism(&deg.sum.proj[k].after(x))))
            .collect()
    }

    /// The element of degree 0 given by a chain map.
    pub fn element_of_map(&self, f: &ChainMap) -> Mor {
        let fam: Vec<(i64, Mor)> = self.x.degrees().map(|i| (i, f.comp(i))).collect();
        self.element(0, &fam)
    }
}

pub fn hom_complex(x: &Complex, y: &Complex) -> Result<HomComplex> {
    if x.instance() != y.instance() {
        return Err(Error::InstanceMismatch(format!(
            "{} vs {}",
            x.instance(),
            y.instance()
        )));
    }
    let hinst = x.instance().hom_instance();
    if x.is_empty_support() || y.is_empty_support() {
        return Ok(HomComplex {
            x: x.clone(),
            y: y.clone(),
            complex: Complex::zero(hinst),
            degrees: vec![],
        });
    }
    let lo = y.lo() - x.hi();
    let hi = y.hi() - x.lo();
    let mut degrees = Vec::new();
    for n in lo..=hi {
        let spaces: Vec<(i64, HomSpace)> = x
            .degrees()
            .map(|i| (i, HomSpace::new(x.obj(i), y.obj(i + n)).unwrap()))
            .collect();
        let objs: Vec<Obj> = spaces.iter().map(|(_, h)| h.obj.clone()).collect();
        let sum = direct_sum_in(hinst, &objs);
        degrees.push(HomDegree { n, spaces, sum });
    }
    let mut diffs = Vec::new();
    for n in lo + 1..=hi {
        let (src, dst) = (&degrees[(n - lo) as usize], &degrees[(n - lo - 1) as usize]);
        let sign = if n.rem_euclid(2) == 0 { -1 } else { 1 };
        let d = src.sum.block_mor(&dst.sum, |r, c| {
            let (i, hs) = &src.spaces[c];
            let (j, ht) = &dst.spaces[r];
            if j == i {
                Some(induced(hs, ht, |f| y.d(i + n).after(f)))
            } else if *j == i + 1 {
                Some(induced(hs, ht, |f| f.after(&x.d(i + 1)).scale(sign)))
            } else {
                None
            }
        });
        diffs.push(d);
    }
    let objects = degrees.iter().map(|d| d.sum.obj.clone()).collect();
    let complex = Complex::new(hinst, lo, objects, diffs)?;
    Ok(HomComplex {
        x: x.clone(),
        y: y.clone(),
        complex,
        degrees,
    })
}

/// The map of hom objects induced by `op` on generators.
fn induced(hs: &HomSpace, ht: &HomSpace, op: impl Fn(&Mor) -> Mor) -> Mor {
    let n = hs.obj.gens();
    let cols: Vec<MorMatrix> = (0..n)
        .map(|k| ht.coords(&op(&hs.basis_element(k))))
        .collect();
    let mat = match hs.obj.instance() {
        InstanceId::FgAb => {
            let parts: Vec<IntMatrix> = cols
                .into_iter()
                .map(|c| match c {
                    MorMatrix::Int(m) => m,
                    MorMatrix::Rat(_) => unreachable!(),
                })
                .collect();
            MorMatrix::Int(IntMatrix::hstack_all(ht.obj.gens(), &parts))
        }
        _ => {
            let parts: Vec<RatMatrix> = cols
                .into_iter()
                .map(|c| match c {
                    MorMatrix::Rat(m) => m,
                    MorMatrix::Int(m) => m.to_rational(),
                })
                .collect();
            MorMatrix::Rat(RatMatrix::hstack_all(ht.obj.gens(), &parts))
        }
    };
    Mor::new(hs.obj.clone(), ht.obj.clone(), mat).expect("induced map on hom groups")
}

/// `H_n` of a complex over an abelian instance, with the maps needed to name classes.
#[derive(Clone, Debug)]
pub struct Homology {
    pub obj: Obj,
    /// `Z_n → X_n`.
    pub cycles: Mor,
    /// `Z_n → H_n`.
    pub quotient: Mor,
}

impl Homology {
    /// Class of a cycle `c: A → X_n` as a map `A → H_n`; `None` if `c` is not a cycle.
    pub fn class_of(&self, c: &Mor) -> Option<Mor> {
        factor_through_post(&self.cycles, c).map(|z| self.quotient.after(&z))
    }
}

pub fn homology(x: &Complex, n: i64) -> Result<Homology> {
    if !x.instance().is_abelian() {
        return Err(Error::Unsupported("homology of filtered complexes".into()));
    }
    let (_, z) = kernel(&x.d(n));
    let b = factor_through_post(&z, &x.d(n + 1)).expect("boundaries are cycles");
    let (obj, q) = cokernel(&b);
    Ok(Homology {
        obj,
        cycles: z,
        quotient: q,
    })
}

/// Every homology object vanishes. Vector spaces use rank counting, groups use
/// Smith normal forms.
pub fn homology_vanishes(x: &Complex) -> Result<bool> {
    match x.instance() {
        InstanceId::FiltQ => Err(Error::Unsupported("homology of filtered complexes".into())),
        InstanceId::VectQ => Ok(x.degrees().all(|n| {
            let r_in = rank(x.d(n + 1).rat_ref());
            let r_out = rank(x.d(n).rat_ref());
            x.obj(n).gens() == r_in + r_out
        })),
        InstanceId::FgAb => {
            for n in x.degrees() {
                if !homology(x, n)?.obj.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// `X_{n+1} → Z_n X` is an admissible epic for every `n`.
pub fn is_acyclic(x: &Complex) -> bool {
    if x.is_empty_support() {
        return true;
    }
    (x.lo()..=x.hi()).all(|n| {
        let (_, z) = kernel(&x.d(n));
        let onto = factor_through_post(&z, &x.d(n + 1)).expect("boundaries are cycles");
        is_admissible_epi(&onto)
    })
}

/// `Hom(G, X)` is acyclic for each generator `G`.
pub fn acyclic_by_generators(x: &Complex) -> bool {
    generator_family(x.instance()).iter().all(|g| {
        let h = hom_complex(&sphere(0, g), x).expect("same instance");
        is_acyclic(&h.complex)
    })
}

pub fn is_quasi_iso(f: &ChainMap) -> bool {
    is_acyclic(&cone(f).complex)
}

/// Solves `f = dD + Dd` as one system over all degrees.
pub fn null_homotopy_witness(f: &ChainMap) -> Option<Homotopy> {
    homotopy_between(f, &ChainMap::zero(f.src(), f.dst()), false)
}

/// `D` with `f − g = dD + Dd`; `reversed` changes which solution is returned.
pub fn homotopy_between(f: &ChainMap, g: &ChainMap, reversed: bool) -> Option<Homotopy> {
    let (x, y) = (f.src(), f.dst());
    let mut sys = MorSystem::new(x.instance()).reversed(reversed);
    let degs: Vec<i64> = f.degrees().collect();
    let mut unknowns = Vec::new();
    for &i in &degs {
        if !x.obj(i).is_zero() && !y.obj(i + 1).is_zero() {
            unknowns.push((i, sys.unknown(x.obj(i), y.obj(i + 1))));
        }
    }
    let u = |i: i64| unknowns.iter().find(|(k, _)| *k == i).map(|(_, u)| *u);
    for &i in &degs {
        if x.obj(i).is_zero() || y.obj(i).is_zero() {
            continue;
        }
        let mut terms = Vec::new();
        if let Some(k) = u(i) {
            terms.push(Term::new(k).post(&y.d(i + 1)));
        }
        if let Some(k) = u(i - 1) {
            terms.push(Term::new(k).pre(&x.d(i)));
        }
        sys.equation(terms, f.comp(i).sub(&g.comp(i)));
    }
    let sol = sys.solve().expect("well-formed homotopy system")?;
    let comps = unknowns.iter().map(|&(i, k)| (i, sol[k].clone())).collect();
    let h = Homotopy {
        from: f.clone(),
        to: g.clone(),
        comps,
    };
    debug_assert!(h.verify());
    Some(h)
}

/// Acyclic with every cycle inclusion split, equivalently `id_X` null-homotopic.
pub fn is_split_exact(x: &Complex) -> bool {
    is_acyclic(x)
        && (x.lo()..=x.hi()).all(|n| {
            let (z, incl) = kernel(&x.d(n));
            factor_through_pre(&incl, &Mor::identity(&z)).is_some()
        })
}

/// `H_n Hom(X, Y)`, the group of homotopy classes of maps `X → Y[n]`.
pub fn homotopy_class_group(x: &Complex, y: &Complex, n: i64) -> Result<Obj> {
    let h = hom_complex(x, y)?;
    Ok(homology(&h.complex, n)?.obj)
}

/// The class of a chain map in `H_0 Hom(X, Y)` vanishes.
pub fn homotopy_class_vanishes(f: &ChainMap) -> bool {
    let h = hom_complex(f.src(), f.dst()).expect("same instance");
    let e = h.element_of_map(f);
    let hom = homology(&h.complex, 0).expect("hom complexes are abelian");
    hom.class_of(&e).expect("chain maps are cycles").is_zero()
}

#[cfg(test)]
mod tests {
    use super::super::complex::{disk, shift};
    use super::*;

    fn q() -> Obj {
        Obj::vect(1)
    }

    fn two_term(inst_obj: &Obj, d: Mor) -> Complex {
        Complex::new(
            inst_obj.instance(),
            0,
            vec![d.dst().clone(), d.src().clone()],
            vec![d],
        )
        .unwrap()
    }

    #[test]
    fn hom_complex_examples() {
        let h = hom_complex(&sphere(0, &q()), &sphere(0, &q())).unwrap();
        assert_eq!(h.complex.obj(0), &q());
        let h = hom_complex(&sphere(0, &Obj::z_mod(2)), &sphere(0, &Obj::z())).unwrap();
        assert!(h.complex.is_zero());
        let h = hom_complex(&disk(1, &q()), &disk(1, &q())).unwrap();
        assert_eq!(h.complex.obj(0), &Obj::vect(2));
    }

    #[test]
    fn degree_zero_cycles_are_chain_maps() {
        let x = disk(1, &q());
        let h = hom_complex(&x, &x).unwrap();
        let id = ChainMap::identity(&x);
        let e = h.element_of_map(&id);
        assert!(h.complex.d(0).after(&e).is_zero());
        let fam = h.family(0, &e);
        assert!(fam.iter().all(|(_, m)| m.is_identity()));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(is_acyclic(&disk(3, &Obj::z_mod(4))));
        assert!(!is_acyclic(&sphere(0, &q())));
        let f = Mor::from_i64(&Obj::p0(), &Obj::p1(), &[&[1]]).unwrap();
        let x = two_term(&Obj::p0(), f);
        assert!(!is_acyclic(&x));
        assert!(!acyclic_by_generators(&x));
        assert!(acyclic_by_generators(&disk(1, &Obj::p1())));
        assert!(!acyclic_by_generators(&sphere(0, &q())));
    }

    #[test]
    fn quasi_isos() {
        assert!(is_quasi_iso(&ChainMap::identity(&sphere(0, &q()))));
        let s = sphere(0, &q());
        let z = Complex::zero(InstanceId::VectQ);
        assert!(!is_quasi_iso(&ChainMap::zero(&s, &z)));
        let d = disk(1, &q());
        assert!(is_quasi_iso(&ChainMap::zero(&d, &z)));
    }

    #[test]
    fn homotopies() {
        let d = disk(1, &q());
        assert!(null_homotopy_witness(&ChainMap::zero(&d, &d)).is_some());
        let h = null_homotopy_witness(&ChainMap::identity(&d)).unwrap();
        assert!(h.comp(0).is_identity());
        assert!(null_homotopy_witness(&ChainMap::identity(&sphere(0, &q()))).is_none());
        assert!(is_split_exact(&d));
        let z = Obj::z();
        let x = two_term(&z, Mor::from_i64(&z, &z, &[&[2]]).unwrap());
        assert!(!is_split_exact(&x));
        assert!(!is_acyclic(&x));
    }

    #[test]
    fn homotopy_class_groups() {
        let s = sphere(0, &q());
        assert_eq!(homotopy_class_group(&s, &s, 0).unwrap(), q());
        assert!(homotopy_class_group(&disk(1, &q()), &s, 0)
            .unwrap()
            .is_zero());
        let t = sphere(0, &Obj::z_mod(2));
        assert_eq!(homotopy_class_group(&t, &t, 0).unwrap(), Obj::z_mod(2));
        let sh = shift(&s, 1);
        assert_eq!(homotopy_class_group(&s, &sh, -1).unwrap(), q());
        assert!(homotopy_class_group(&s, &sh, 1).unwrap().is_zero());
    }
}
