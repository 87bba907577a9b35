//! Projective covers, the generating families, and probe-based projectivity.

use super::hom::hom_surjective;
use super::limits::is_admissible_epi;
use super::obj::{InstanceId, Mor, Obj};
use crate::exactlin::{complement_basis, IntMatrix, RatMatrix};

/// An admissible epic onto `x` from a finite sum of generators.
///
/// The source of a filtered cover is `P1^k ⊕ P0^(n−k)` in that order, mapped onto
/// a basis of `V` whose first `k` vectors span `W`.
pub fn projective_cover(x: &Obj) -> (Obj, Mor) {
    match x {
        Obj::Vect { dim } => (x.clone(), Mor::identity(&Obj::vect(*dim))),
        Obj::Filt { dim, sub } => {
            let p = Obj::filt_std(*dim, sub.cols());
            let basis = sub.hstack(&complement_basis(sub));
            let map = Mor::raw_rat(&p, x, basis);
            (p, map)
        }
        Obj::Ab { .. } => {
            let n = x.gens();
            let p = Obj::z_free(n);
            (p.clone(), Mor::raw_int(&p, x, IntMatrix::identity(n)))
        }
    }
}

/// The generators `G` used throughout: `[Q]`, `[(Q,0), (Q,Q)]`, `[Z]`.
pub fn generator_family(instance: InstanceId) -> Vec<Obj> {
    match instance {
        InstanceId::VectQ => vec![Obj::vect(1)],
        InstanceId::FiltQ => vec![Obj::p0(), Obj::p1()],
        InstanceId::FgAb => vec![Obj::z()],
    }
}

/// A fixed family of admissible epics used to probe projectivity.
pub fn probe_epis(instance: InstanceId) -> Vec<Mor> {
    let mut out = Vec::new();
    match instance {
        InstanceId::VectQ => {
            out.push(Mor::from_i64(&Obj::vect(2), &Obj::vect(1), &[&[1, 1]]).unwrap());
            out.push(
                Mor::from_i64(&Obj::vect(3), &Obj::vect(2), &[&[1, 0, 1], &[0, 1, 1]]).unwrap(),
            );
        }
        InstanceId::FiltQ => {
            let line = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[1], &[1]])).unwrap();
            for x in [
                Obj::p0(),
                Obj::p1(),
                line.clone(),
                Obj::filt_std(2, 0),
                Obj::filt_std(2, 2),
            ] {
                out.push(projective_cover(&x).1);
            }
            out.push(Mor::from_i64(&Obj::filt_std(2, 2), &Obj::p1(), &[&[1, 1]]).unwrap());
            out.push(Mor::from_i64(&Obj::filt_std(2, 1), &Obj::p0(), &[&[0, 1]]).unwrap());
            out.push(
                Mor::from_i64(&Obj::filt_std(3, 1), &line, &[&[1, 0, 1], &[1, 1, 0]]).unwrap(),
            );
        }
        InstanceId::FgAb => {
            let z = Obj::z();
            for d in [2, 3, 4] {
                out.push(Mor::from_i64(&z, &Obj::z_mod(d), &[&[1]]).unwrap());
            }
            out.push(Mor::from_i64(&Obj::z_mod(4), &Obj::z_mod(2), &[&[1]]).unwrap());
            out.push(Mor::from_i64(&Obj::z_mod(6), &Obj::z_mod(3), &[&[1]]).unwrap());
            let t = Obj::ab(0, &[2, 6]).unwrap();
            out.push(projective_cover(&t).1);
        }
    }
    debug_assert!(out.iter().all(is_admissible_epi));
    out
}

/// `Hom(p, −)` sends every probe admissible epic to a surjection.
pub fn is_projective(p: &Obj) -> bool {
    probe_epis(p.instance())
        .iter()
        .all(|e| hom_surjective(p, e))
}

/// Projectivity read off the normal form: all vector spaces and filtered spaces,
/// and exactly the free groups.
pub fn is_projective_structural(p: &Obj) -> bool {
    match p {
        Obj::Ab { torsion, .. } => torsion.is_empty(),
        _ => true,
    }
}

/// `Hom(G, f)` is onto for each generator `G`.
pub fn detect_epi_via_generators(f: &Mor) -> bool {
    generator_family(f.instance())
        .iter()
        .all(|g| hom_surjective(g, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::excat::limits::classify;

    #[test]
    fn covers() {
        let (p, e) = projective_cover(&Obj::vect(3));
        assert_eq!(p, Obj::vect(3));
        assert!(e.is_identity());
        let (p, e) = projective_cover(&Obj::z_mod(2));
        assert_eq!(p, Obj::z());
        assert!(classify(&e).is_admissible_epi);
        let x = Obj::filt(2, &RatMatrix::from_i64_rows(&[&[1], &[2]])).unwrap();
        let (p, e) = projective_cover(&x);
        assert_eq!(p, Obj::filt_std(2, 1));
        assert!(classify(&e).is_admissible_epi);
    }

    #[test]
    fn generators_are_projective() {
        for inst in InstanceId::ALL {
            for g in generator_family(inst) {
                assert!(is_projective(&g), "{g}");
            }
        }
        assert!(!is_projective(&Obj::z_mod(2)));
        for x in [
            Obj::z_mod(2),
            Obj::z_mod(3),
            Obj::z_free(2),
            Obj::ab(1, &[4]).unwrap(),
        ] {
            assert_eq!(is_projective(&x), is_projective_structural(&x), "{x}");
        }
        assert!(is_projective(&Obj::filt_std(3, 1)));
    }

    #[test]
    fn epi_detection() {
        assert!(detect_epi_via_generators(&Mor::identity(&Obj::filt_std(
            2, 1
        ))));
        assert!(!detect_epi_via_generators(
            &Mor::from_i64(&Obj::p0(), &Obj::p1(), &[&[1]]).unwrap()
        ));
        let z = Obj::z();
        assert!(!detect_epi_via_generators(
            &Mor::from_i64(&z, &z, &[&[2]]).unwrap()
        ));
    }
}
