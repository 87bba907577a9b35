//! Exact linear algebra over the rationals and the integers.

pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod smith;

pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use rational::{
    colspace_basis, colspace_contains, complement_basis, intersect_colspaces, inverse,
    nullspace_basis, rank, rref, solve_linear,
};
pub use scalar::{Integer, Rational, Scalar};
pub use smith::{
    integer_kernel, kernel_lattice, lattice_basis, smith_normal_form, solve_int_linear,
    SmithDecomposition,
};
