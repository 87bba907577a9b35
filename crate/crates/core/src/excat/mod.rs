//! Exact categories: objects, morphisms, and the admissibility calculus for the
//! three instances.

pub mod fgab;
pub mod hom;
pub mod limits;
pub mod obj;
pub mod proj;
pub mod sum;

pub use hom::{
    factor_through_post, factor_through_pre, hom_surjective, two_sided_inverse,
    two_sided_inverse_by_system, HomSpace, MorSystem, Term,
};
pub use limits::{
    admissible_by_definition, classify, coimage, cokernel, epi_mono_factorization,
    filt_strict_criterion, image, is_admissible_epi, is_admissible_mono, is_epi, is_iso, is_mono,
    is_short_exact, kernel, pullback_along_epi, pushout_along_mono, Classification, Pullback,
    Pushout, Ses,
};
pub use obj::{compose, InstanceId, Mor, MorMatrix, Obj};
pub use proj::{
    detect_epi_via_generators, generator_family, is_projective, is_projective_structural,
    probe_epis, projective_cover,
};
pub use sum::{direct_sum, direct_sum_in, direct_sum_many, sum_of_maps, Biproduct};

/// `Hom(a, b)` as an object of the hom instance.
pub fn hom_group(a: &Obj, b: &Obj) -> crate::Result<Obj> {
    Ok(HomSpace::new(a, b)?.obj)
}
