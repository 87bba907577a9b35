//! Projective resolutions, comparison maps, Ext, and long exact homology sequences.

use std::fmt;

use crate::chain::{hom_complex, homology, is_quasi_iso, sphere, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::exactlin::{Rational, Scalar};
use crate::excat::{
    factor_through_post, factor_through_pre, is_admissible_epi, is_epi, is_short_exact, kernel,
    projective_cover, Mor, Obj,
};
use crate::model::{factor_cof_triv_fib, has_projective_entries, solve_chain_map, ModelFlavor};

/// A degreewise projective complex with an admissible-epic quasi-isomorphism onto `target`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: Complex,
    pub resolvent: Complex,
    pub map: ChainMap,
}

/// The object is a finite direct sum of generators, literally: a free group, any
/// vector space, or a filtered space whose subspace is spanned by basis vectors.
pub fn is_generator_sum(x: &Obj) -> bool {
    match x {
        Obj::Vect { .. } => true,
        Obj::Ab { torsion, .. } => torsion.is_empty(),
        Obj::Filt { sub, .. } => (0..sub.cols()).all(|j| {
            let col = sub.column(j);
            col.iter().filter(|v| !v.is_zero()).count() == 1
                && col.iter().all(|v| v.is_zero() || *v == Rational::one())
        }),
    }
}

impl Resolution {
    pub fn verify(&self) -> bool {
        self.map.src() == &self.resolvent
            && self.map.dst() == &self.target
            && self.resolvent.objects().iter().all(is_generator_sum)
            && self
                .map
                .degrees()
                .all(|n| is_admissible_epi(&self.map.comp(n)))
            && is_quasi_iso(&self.map)
    }
}

/// Resolves a finite-support complex by factoring `0 → X` as a cofibration
/// followed by a trivial fibration.
pub fn resolve_complex(x: &Complex) -> Result<Resolution> {
    let zero = ChainMap::zero(&Complex::zero(x.instance()), x);
    let w = factor_cof_triv_fib(&zero, ModelFlavor::ChPlus, None)?;
    let r = Resolution {
        target: x.clone(),
        resolvent: w.middle,
        map: w.right,
    };
    if !r.verify() {
        return Err(Error::Invariant(
            "resolution failed its postconditions".into(),
        ));
    }
    Ok(r)
}

/// Resolution of `S^0(a)`.
pub fn resolve_object(a: &Obj) -> Result<Resolution> {
    resolve_complex(&sphere(0, a))
}

/// A chain map `P → Q` over `g`, i.e. with `q ∘ F = g ∘ p`. `reversed` changes
/// which of the homotopic solutions is returned.
pub fn comparison_lift_complex(
    g: &ChainMap,
    p: &Resolution,
    q: &Resolution,
    reversed: bool,
) -> Result<ChainMap> {
    if g.src() != &p.target || g.dst() != &q.target {
        return Err(Error::Dimension(
            "comparison map endpoints do not match the resolutions".into(),
        ));
    }
    if !has_projective_entries(&p.resolvent) {
        return Err(Error::Precondition(
            "source resolvent is not degreewise projective".into(),
        ));
    }
    if !q.map.degrees().all(|n| is_admissible_epi(&q.map.comp(n))) || !is_quasi_iso(&q.map) {
        return Err(Error::Precondition(
            "target augmentation is not an acyclic admissible epic".into(),
        ));
    }
    let over = g.after(&p.map);
    solve_chain_map(
        &p.resolvent,
        &q.resolvent,
        None,
        Some((&q.map, &over)),
        reversed,
    )?
    .ok_or_else(|| Error::NoLift("comparison map".into()))
}

/// The comparison map over `f: a → b` between resolutions of `a` and `b`.
pub fn comparison_lift(
    f: &Mor,
    p: &Resolution,
    q: &Resolution,
    reversed: bool,
) -> Result<ChainMap> {
    let (sa, sb) = (sphere(0, f.src()), sphere(0, f.dst()));
    let g = ChainMap::from_fn(&sa, &sb, |n| {
        if n == 0 {
            f.clone()
        } else {
            Mor::zero(sa.obj(n), sb.obj(n))
        }
    })?;
    comparison_lift_complex(&g, p, q, reversed)
}

/// `Ext^n(a, b) = H_{−n} Hom(P, S^0 b)` for a projective resolution `P → a`.
pub fn ext_group(n: u32, a: &Obj, b: &Obj) -> Result<Obj> {
    if a.instance() != b.instance() {
        return Err(Error::InstanceMismatch(format!(
            "Ext between {} and {}",
            a.instance(),
            b.instance()
        )));
    }
    let p = resolve_object(a)?;
    let h = hom_complex(&p.resolvent, &sphere(0, b))?;
    Ok(homology(&h.complex, -(n as i64))?.obj)
}

/// The projective cover of `a` admits a section.
pub fn cover_splits(a: &Obj) -> bool {
    let (_, c) = projective_cover(a);
    factor_through_post(&c, &Mor::identity(a)).is_some()
}

/// `H_n(f)`.
pub fn induced_on_homology(f: &ChainMap, n: i64) -> Result<Mor> {
    let hx = homology(f.src(), n)?;
    let hy = homology(f.dst(), n)?;
    let zf = factor_through_post(&hy.cycles, &f.comp(n).after(&hx.cycles))
        .expect("cycles map to cycles");
    Ok(factor_through_pre(&hx.quotient, &hy.quotient.after(&zf))
        .expect("boundaries map to boundaries"))
}

/// The connecting map `H_n(C) → H_{n−1}(A)` of `0 → A → B → C → 0`.
pub fn connecting_map(i: &ChainMap, p: &ChainMap, n: i64) -> Result<Mor> {
    let hc = homology(p.dst(), n)?;
    let ha = homology(i.src(), n - 1)?;
    let b = i.dst();
    let (_, cover) = projective_cover(hc.cycles.src());
    let zeta = hc.cycles.after(&cover);
    let beta = factor_through_post(&p.comp(n), &zeta)
        .ok_or_else(|| Error::Precondition(format!("not onto in degree {n}")))?;
    let alpha = factor_through_post(&i.comp(n - 1), &b.d(n).after(&beta))
        .ok_or_else(|| Error::Precondition(format!("not exact in degree {}", n - 1)))?;
    let gamma = ha.class_of(&alpha).expect("connecting images are cycles");
    factor_through_pre(&hc.quotient.after(&cover), &gamma)
        .ok_or_else(|| Error::Invariant("connecting map is not well defined".into()))
}

#[derive(Clone, Debug)]
pub struct LesNode {
    /// `H_n(A)`, `H_n(B)` or `H_n(C)`.
    pub label: String,
    pub obj: Obj,
    /// Map to the next node; the last node maps to zero.
    pub next: Mor,
}

/// `… → H_n(A) → H_n(B) → H_n(C) → H_{n−1}(A) → …`, from the top degree down.
#[derive(Clone, Debug)]
pub struct Les {
    pub nodes: Vec<LesNode>,
}

/// `out ∘ in = 0` and `in` maps onto `ker(out)`.
pub fn is_exact_at(incoming: &Mor, outgoing: &Mor) -> bool {
    if !outgoing.after(incoming).is_zero() {
        return false;
    }
    let (_, k) = kernel(outgoing);
    factor_through_post(&k, incoming).is_some_and(|m| is_epi(&m))
}

impl Les {
    pub fn is_exact(&self) -> bool {
        let Some(first) = self.nodes.first() else {
            return true;
        };
        let mut incoming = Mor::zero(&Obj::zero(first.obj.instance()), &first.obj);
        for node in &self.nodes {
            if !is_exact_at(&incoming, &node.next) {
                return false;
            }
            incoming = node.next.clone();
        }
        true
    }

    /// Connecting maps, keyed by the degree of their source.
    pub fn connecting(&self) -> impl Iterator<Item = &Mor> {
        self.nodes.iter().skip(2).step_by(3).map(|n| &n.next)
    }
}

impl fmt::Display for Les {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in self.nodes.iter().enumerate() {
            if k > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{} = {}", n.label, n.obj)?;
        }
        Ok(())
    }
}

/// The long exact homology sequence of a degreewise short exact sequence.
pub fn homology_les(i: &ChainMap, p: &ChainMap) -> Result<Les> {
    if !i.instance().is_abelian() {
        return Err(Error::Unsupported(
            "long exact sequences over filtered spaces".into(),
        ));
    }
    if i.dst() != p.src() {
        return Err(Error::Dimension("maps are not composable".into()));
    }
    let degs: Vec<i64> = i.degrees().chain(p.degrees()).collect();
    let (Some(&lo), Some(&hi)) = (degs.iter().min(), degs.iter().max()) else {
        return Ok(Les { nodes: vec![] });
    };
    for n in lo..=hi {
        if !is_short_exact(&i.comp(n), &p.comp(n)) {
            return Err(Error::Precondition(format!(
                "not short exact in degree {n}"
            )));
        }
    }
    let mut nodes = Vec::new();
    for n in (lo..=hi).rev() {
        let ha = homology(i.src(), n)?.obj;
        let hb = homology(i.dst(), n)?.obj;
        let hc = homology(p.dst(), n)?.obj;
        nodes.push(LesNode {
            label: format!("H_{n}(A)"),
            obj: ha,
            next: induced_on_homology(i, n)?,
        });
        nodes.push(LesNode {
            label: format!("H_{n}(B)"),
            obj: hb,
            next: induced_on_homology(p, n)?,
        });
        nodes.push(LesNode {
            label: format!("H_{n}(C)"),
            obj: hc,
            next: connecting_map(i, p, n)?,
        });
    }
    Ok(Les { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{direct_sum_complexes, disk};
    use crate::excat::InstanceId;

    #[test]
    fn resolution_examples() {
        let q = Obj::vect(1);
        let r = resolve_object(&q).unwrap();
        assert_eq!(r.resolvent, sphere(0, &q));
        assert!(r.map.is_identity());

        let r = resolve_object(&Obj::z_mod(2)).unwrap();
        assert_eq!(r.resolvent.lo(), 0);
        assert_eq!(r.resolvent.hi(), 1);
        let d1 = r.resolvent.d(1);
        assert!(
            d1 == Mor::from_i64(&Obj::z(), &Obj::z(), &[&[2]]).unwrap()
                || d1 == Mor::from_i64(&Obj::z(), &Obj::z(), &[&[-2]]).unwrap()
        );

        let x = Obj::filt(
            3,
            &crate::exactlin::RatMatrix::from_i64_rows(&[&[1], &[1], &[0]]),
        )
        .unwrap();
        let r = resolve_object(&x).unwrap();
        assert_eq!(r.resolvent.trimmed().degrees(), 0..=0);
        assert_eq!(r.resolvent.obj(0).sub_dim(), 1);
    }

    #[test]
    fn ext_values() {
        let z = Obj::z();
        assert_eq!(ext_group(1, &Obj::z_mod(2), &z).unwrap(), Obj::z_mod(2));
        assert_eq!(
            ext_group(1, &Obj::z_mod(4), &Obj::z_mod(6)).unwrap(),
            Obj::z_mod(2)
        );
        assert!(ext_group(1, &Obj::vect(1), &Obj::vect(1))
            .unwrap()
            .is_zero());
        assert!(ext_group(1, &z, &Obj::z_mod(3)).unwrap().is_zero());
        assert_eq!(
            ext_group(0, &Obj::z_mod(4), &Obj::z_mod(6)).unwrap(),
            Obj::z_mod(2)
        );
        assert!(ext_group(2, &Obj::z_mod(4), &Obj::z_mod(6))
            .unwrap()
            .is_zero());
        assert!(ext_group(1, &Obj::p0(), &Obj::p1()).unwrap().is_zero());
        assert!(ext_group(1, &z, &Obj::vect(1)).is_err());
        assert!(cover_splits(&z) && !cover_splits(&Obj::z_mod(2)));
    }

    #[test]
    fn comparison_lifts() {
        let a = Obj::z_mod(2);
        let b = Obj::z_mod(4);
        let f = Mor::from_i64(&a, &b, &[&[2]]).unwrap();
        let (p, q) = (resolve_object(&a).unwrap(), resolve_object(&b).unwrap());
        let l1 = comparison_lift(&f, &p, &q, false).unwrap();
        let l2 = comparison_lift(&f, &p, &q, true).unwrap();
        assert!(l1.is_valid());
        assert!(crate::chain::null_homotopy_witness(&l1.sub(&l2)).is_some());
        let id = comparison_lift(&Mor::identity(&a), &p, &p, false).unwrap();
        assert!(id.is_identity());
        let z = comparison_lift(&Mor::zero(&a, &b), &p, &q, false).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn long_exact_sequence() {
        let z = Obj::z();
        let two = Mor::from_i64(&z, &z, &[&[2]]).unwrap();
        let a = sphere(0, &z);
        let c = sphere(0, &Obj::z_mod(2));
        let i = ChainMap::from_fn(&a, &a, |n| {
            if n == 0 {
                two.clone()
            } else {
                Mor::identity(a.obj(n))
            }
        })
        .unwrap();
        let pm = Mor::from_i64(&z, &Obj::z_mod(2), &[&[1]]).unwrap();
        let p = ChainMap::from_fn(&a, &c, |n| {
            if n == 0 {
                pm.clone()
            } else {
                Mor::zero(a.obj(n), c.obj(n))
            }
        })
        .unwrap();
        let les = homology_les(&i, &p).unwrap();
        assert!(les.is_exact());
        assert_eq!(les.nodes.len(), 3);

        // Split sequence: all connecting maps vanish.
        let d = disk(1, &Obj::vect(1));
        let s = sphere(0, &Obj::vect(1));
        let sum = direct_sum_complexes(InstanceId::VectQ, &[s.clone(), d.clone()]);
        let les = homology_les(&sum.inj[0], &sum.proj[1]).unwrap();
        assert!(les.is_exact());
        assert!(les.connecting().all(Mor::is_zero));
    }
}
