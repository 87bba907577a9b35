//! Kernels, cokernels, the admissibility analysis of a morphism, and the
//! pushout/pullback constructions along admissible maps.

use super::fgab;
use super::hom::{factor_through_post, factor_through_pre, two_sided_inverse};
use super::obj::{InstanceId, Mor, Obj};
use super::sum::direct_sum_in;
use crate::error::{Error, Result};
use crate::exactlin::{
    colspace_basis, intersect_colspaces, inverse, nullspace_basis, rank, solve_linear, RatMatrix,
};

pub fn kernel(f: &Mor) -> (Obj, Mor) {
    match f.instance() {
        InstanceId::FgAb => fgab::kernel(f),
        inst => {
            let k = nullspace_basis(f.rat_ref());
            let obj = if inst == InstanceId::VectQ {
                Obj::vect(k.cols())
            } else {
                let w = f.src().sub_basis().unwrap();
                let meet = intersect_colspaces(w, &k);
                let coords = solve_linear(&k, &meet)
                    .expect("shapes agree")
                    .expect("intersection lies in the kernel");
                Obj::filt(k.cols(), &coords).unwrap()
            };
            let incl = Mor::raw_rat(&obj, f.src(), k);
            (obj, incl)
        }
    }
}

pub fn cokernel(f: &Mor) -> (Obj, Mor) {
    match f.instance() {
        InstanceId::FgAb => fgab::cokernel(f),
        inst => {
            let c = nullspace_basis(&f.rat_ref().transpose()).transpose();
            let obj = if inst == InstanceId::VectQ {
                Obj::vect(c.rows())
            } else {
                let w = f.dst().sub_basis().unwrap();
                Obj::filt(c.rows(), &c.mul(w)).unwrap()
            };
            let proj = Mor::raw_rat(f.dst(), &obj, c);
            (obj, proj)
        }
    }
}

/// `Coim f = Coker(Ker f → src)` with its projection.
pub fn coimage(f: &Mor) -> (Obj, Mor) {
    cokernel(&kernel(f).1)
}

/// `Im f = Ker(dst → Coker f)` with its inclusion.
pub fn image(f: &Mor) -> (Obj, Mor) {
    kernel(&cokernel(f).1)
}

fn rank_of(f: &Mor) -> usize {
    rank(f.rat_ref())
}

pub fn is_mono(f: &Mor) -> bool {
    match f.instance() {
        InstanceId::FgAb => fgab::kernel(f).0.is_zero(),
        _ => rank_of(f) == f.src().gens(),
    }
}

pub fn is_epi(f: &Mor) -> bool {
    match f.instance() {
        InstanceId::FgAb => fgab::cokernel(f).0.is_zero(),
        _ => rank_of(f) == f.dst().gens(),
    }
}

/// `dim f(W)` and `dim (W' ∩ f(V))` for a filtered map.
fn filt_dims(f: &Mor) -> (usize, usize) {
    let m = f.rat_ref();
    let w = f.src().sub_basis().unwrap();
    let wd = f.dst().sub_basis().unwrap();
    let fw = rank(&m.mul(w));
    let im = colspace_basis(m);
    let meet = intersect_colspaces(wd, &im).cols();
    (fw, meet)
}

/// The closed-form strictness test `f(W) = W' ∩ f(V)` for filtered maps.
pub fn filt_strict_criterion(f: &Mor) -> bool {
    let (fw, meet) = filt_dims(f);
    fw == meet
}

pub fn is_admissible_mono(f: &Mor) -> bool {
    match f.instance() {
        InstanceId::FiltQ => is_mono(f) && filt_strict_criterion(f),
        _ => is_mono(f),
    }
}

pub fn is_admissible_epi(f: &Mor) -> bool {
    match f.instance() {
        InstanceId::FiltQ => {
            is_epi(f) && rank(&f.rat_ref().mul(f.src().sub_basis().unwrap())) == f.dst().sub_dim()
        }
        _ => is_epi(f),
    }
}

/// Isomorphism test: an invertible matrix whose inverse is a morphism, or trivial
/// kernel and cokernel for groups.
pub fn is_iso(f: &Mor) -> bool {
    match f.instance() {
        InstanceId::FgAb => kernel(f).0.is_zero() && cokernel(f).0.is_zero(),
        _ => inverse(f.rat_ref()).is_some_and(|inv| Mor::from_rat(f.dst(), f.src(), inv).is_ok()),
    }
}

/// The full admissibility record of a morphism.
#[derive(Clone, Debug)]
pub struct Classification {
    pub is_mono: bool,
    pub is_epi: bool,
    pub is_admissible_mono: bool,
    pub is_admissible_epi: bool,
    pub is_weakly_admissible: bool,
    pub is_admissible: bool,
    pub kernel: (Obj, Mor),
    pub cokernel: (Obj, Mor),
    /// The projection `src → Coim f`.
    pub coimage: (Obj, Mor),
    /// The inclusion `Im f → dst`.
    pub image: (Obj, Mor),
    /// The induced map `Coim f → Im f`.
    pub induced: Mor,
}

pub fn classify(f: &Mor) -> Classification {
    let ker = kernel(f);
    let cok = cokernel(f);
    let coim = cokernel(&ker.1);
    let im = kernel(&cok.1);
    let through_coim = factor_through_pre(&coim.1, f).expect("f kills its kernel");
    let induced = factor_through_post(&im.1, &through_coim).expect("f lands in its image");
    let is_weakly_admissible = is_admissible_mono(&ker.1) && is_admissible_epi(&cok.1);
    let is_admissible = match f.instance() {
        InstanceId::FiltQ => {
            let by_criterion = filt_strict_criterion(f);
            debug_assert_eq!(
                by_criterion,
                induced_is_iso(&induced),
                "strictness criterion disagrees with the coimage-image test for {f}"
            );
            by_criterion
        }
        _ => true,
    } && is_weakly_admissible;
    let is_mono = ker.0.is_zero();
    let is_epi = cok.0.is_zero();
    Classification {
        is_mono,
        is_epi,
        is_admissible_mono: is_mono && is_admissible,
        is_admissible_epi: is_epi && is_admissible,
        is_weakly_admissible,
        is_admissible,
        kernel: ker,
        cokernel: cok,
        coimage: coim,
        image: im,
        induced,
    }
}

fn induced_is_iso(induced: &Mor) -> bool {
    two_sided_inverse(induced).is_some()
}

/// Admissibility by definition: the induced map `Coim f → Im f` is invertible.
pub fn admissible_by_definition(f: &Mor) -> bool {
    let coim = coimage(f);
    let im = image(f);
    let g = factor_through_pre(&coim.1, f).expect("f kills its kernel");
    let fhat = factor_through_post(&im.1, &g).expect("f lands in its image");
    induced_is_iso(&fhat)
}

/// `f = m ∘ e` with `e` an admissible epic and `m` an admissible monic, when one exists.
pub fn epi_mono_factorization(f: &Mor) -> Option<(Mor, Mor)> {
    let (_, pi) = coimage(f);
    let (_, iota) = image(f);
    let g = factor_through_pre(&pi, f)?;
    let fhat = factor_through_post(&iota, &g)?;
    let e = fhat.after(&pi);
    (is_admissible_epi(&e) && is_admissible_mono(&iota)).then_some((e, iota))
}

/// A kernel-cokernel pair `A ↣ B ↠ C`.
#[derive(Clone, Debug)]
pub struct Ses {
    pub left: Mor,
    pub right: Mor,
}

impl Ses {
    pub fn new(left: Mor, right: Mor) -> Result<Ses> {
        if !is_short_exact(&left, &right) {
            return Err(Error::Precondition("pair is not short exact".into()));
        }
        Ok(Ses { left, right })
    }
}

/// `i` is an admissible monic, `p` an admissible epic, `p ∘ i = 0`, and `i`
/// maps isomorphically onto the kernel of `p`.
pub fn is_short_exact(i: &Mor, p: &Mor) -> bool {
    if i.dst() != p.src() || !p.after(i).is_zero() {
        return false;
    }
    if !is_admissible_mono(i) || !is_admissible_epi(p) {
        return false;
    }
    let (_, k) = kernel(p);
    match factor_through_post(&k, i) {
        Some(u) => two_sided_inverse(&u).is_some(),
        None => false,
    }
}

/// A pushout square `A → B`, `A → A'`, completed by `A' → B'` and `B → B'`.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub obj: Obj,
    /// The pushed-out monic `A' → B'`.
    pub along: Mor,
    /// `B → B'`.
    pub other: Mor,
    /// The short exact sequence `A ↣ B ⊕ A' ↠ B'`.
    pub ses: Ses,
}

pub fn pushout_along_mono(i: &Mor, f: &Mor) -> Result<Pushout> {
    i.src().same_instance(f.src())?;
    if i.src() != f.src() {
        return Err(Error::Precondition(
            "pushout legs have different sources".into(),
        ));
    }
    if !is_admissible_mono(i) {
        return Err(Error::Precondition(
            "pushout along a map that is not an admissible monic".into(),
        ));
    }
    let s = direct_sum_in(i.instance(), &[i.dst().clone(), f.dst().clone()]);
    let phi = s.inj[0].after(i).sub(&s.inj[1].after(f));
    let (obj, c) = cokernel(&phi);
    let along = c.after(&s.inj[1]);
    let other = c.after(&s.inj[0]);
    let ses = Ses::new(phi, c).map_err(|_| {
        Error::Invariant("pushout sequence A -> B+A' -> B' is not short exact".into())
    })?;
    if !is_admissible_mono(&along) {
        return Err(Error::Invariant(
            "pushed-out map is not an admissible monic".into(),
        ));
    }
    Ok(Pushout {
        obj,
        along,
        other,
        ses,
    })
}

/// A pullback square over `C` of `p: B ↠ C` and `f: X → C`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub obj: Obj,
    /// The pulled-back epic `P → X`.
    pub along: Mor,
    /// `P → B`.
    pub other: Mor,
}

pub fn pullback_along_epi(p: &Mor, f: &Mor) -> Result<Pullback> {
    p.src().same_instance(f.src())?;
    if p.dst() != f.dst() {
        return Err(Error::Precondition(
            "pullback legs have different targets".into(),
        ));
    }
    if !is_admissible_epi(p) {
        return Err(Error::Precondition(
            "pullback along a map that is not an admissible epic".into(),
        ));
    }
    let s = direct_sum_in(p.instance(), &[p.src().clone(), f.src().clone()]);
    let phi = p.after(&s.proj[0]).sub(&f.after(&s.proj[1]));
    let (obj, k) = kernel(&phi);
    let along = s.proj[1].after(&k);
    let other = s.proj[0].after(&k);
    if !is_admissible_epi(&along) {
        return Err(Error::Invariant(
            "pulled-back map is not an admissible epic".into(),
        ));
    }
    // The kernel of the pulled-back epic is the kernel of p.
    let (kp_obj, kp) = kernel(p);
    let (_, kq) = kernel(&along);
    let to_b = other.after(&kq);
    match factor_through_post(&kp, &to_b) {
        Some(u) if two_sided_inverse(&u).is_some() => {}
        _ => {
            return Err(Error::Invariant(format!(
                "kernel of the pulled-back epic is not the kernel {kp_obj} of p"
            )))
        }
    }
    Ok(Pullback { obj, along, other })
}

/// Cheap column-space helper: the image of a linear map as a subspace basis.
pub fn image_basis(f: &Mor) -> RatMatrix {
    colspace_basis(&f.rat())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Integer;

    fn m(src: &Obj, dst: &Obj, rows: &[&[i64]]) -> Mor {
        Mor::from_i64(src, dst, rows).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let x = Obj::vect(2);
        let y = Obj::vect(1);
        let (k, inc) = kernel(&Mor::zero(&x, &y));
        assert_eq!(k, x);
        assert!(inc.is_identity());
        let z = Obj::z();
        assert!(kernel(&m(&z, &z, &[&[2]])).0.is_zero());
        let (k, inc) = kernel(&m(&z, &Obj::z_mod(2), &[&[1]]));
        assert_eq!(k, z);
        assert_eq!(inc.int().get(0, 0).abs(), Integer::new(2));
    }

    #[test]
    fn cokernel_examples() {
        assert!(cokernel(&Mor::identity(&Obj::vect(3))).0.is_zero());
        let z = Obj::z();
        assert_eq!(cokernel(&m(&z, &z, &[&[2]])).0, Obj::z_mod(2));
        // (Q,0) into (Q^2, span(e2)) along e1: quotient Q with the image of span(e2).
        let v = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[0], &[1]])).unwrap();
        let f = m(&Obj::p0(), &v, &[&[1], &[0]]);
        let (c, _) = cokernel(&f);
        assert_eq!(c, Obj::p1());
        let f = m(&Obj::p0(), &Obj::filt_std(2, 1), &[&[1], &[1]]);
        let (c, _) = cokernel(&f);
        assert_eq!(c, Obj::p1());
    }

    #[test]
    fn classify_examples() {
        let f = m(&Obj::p0(), &Obj::p1(), &[&[1]]);
        let c = classify(&f);
        assert!(c.is_mono && c.is_epi);
        assert!(!c.is_admissible_mono && !c.is_admissible_epi && !c.is_admissible);
        assert_eq!(c.coimage.0, Obj::p0());
        assert_eq!(c.image.0, Obj::p1());
        assert!(c.is_weakly_admissible);
        assert!(!admissible_by_definition(&f));
        assert!(epi_mono_factorization(&f).is_none());
        let g = m(&Obj::vect(2), &Obj::vect(2), &[&[1, 1], &[1, 1]]);
        assert!(classify(&g).is_admissible);
        let id = Mor::identity(&Obj::ab(1, &[2]).unwrap());
        let c = classify(&id);
        assert!(c.is_admissible_mono && c.is_admissible_epi);
    }

    #[test]
    fn pushout_examples() {
        let a = Obj::vect(1);
        let b = Obj::vect(2);
        let i = m(&a, &b, &[&[1], &[0]]);
        let po = pushout_along_mono(&i, &Mor::identity(&a)).unwrap();
        assert_eq!(po.obj, b);
        let z = Obj::z();
        let two = m(&z, &z, &[&[2]]);
        let f = m(&z, &Obj::z_mod(3), &[&[1]]);
        let po = pushout_along_mono(&two, &f).unwrap();
        assert_eq!(po.obj, Obj::z_mod(6));
        assert!(pushout_along_mono(
            &m(&Obj::p0(), &Obj::p1(), &[&[1]]),
            &Mor::identity(&Obj::p0())
        )
        .is_err());
    }

    #[test]
    fn pullback_examples() {
        let z = Obj::z();
        let z2 = Obj::z_mod(2);
        let p = m(&z, &z2, &[&[1]]);
        let f = m(&Obj::z_mod(4), &z2, &[&[1]]);
        let pb = pullback_along_epi(&p, &f).unwrap();
        assert_eq!(pb.obj, Obj::ab(1, &[2]).unwrap());
        let pb = pullback_along_epi(&p, &Mor::identity(&z2)).unwrap();
        assert_eq!(pb.obj, z);
    }
}
