//! Chain complexes with finite support, the Hom complex, acyclicity and homotopy.

pub mod complex;
pub mod homcx;

pub use complex::{
    cokernel_complex, cone, cone_with, cycles, direct_sum_complexes, disk, kernel_complex, shift,
    shift_map, sphere, truncate, ChainMap, Complex, ComplexSum, Cone, ConeSign, Homotopy,
};
pub use homcx::{
    acyclic_by_generators, hom_complex, homology, homology_vanishes, homotopy_between,
    homotopy_class_group, homotopy_class_vanishes, is_acyclic, is_quasi_iso, is_split_exact,
    null_homotopy_witness, HomComplex, Homology,
};
