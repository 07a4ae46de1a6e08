//! Finitely generated abelian groups over exact integers.

mod decide;
mod group;
mod hom;
mod matrix;
pub mod partition;
mod snf;

pub use decide::{
    bounded_cokernel_types, exists_extension, exists_hom_with, exists_injection, exists_surjection,
    extension_candidates, hom_outcomes, subgroup_types,
};
pub use group::{cokernel, AbelianGroup, GroupError};
pub(crate) use group::cokernel_from_diagonal;
pub use hom::{integer_kernel, reduce_coordinates, subquotient, Hom, HomError, Quotient};
pub use matrix::IntegerMatrix;
pub use snf::{smith_normal_form, SmithNormalForm};
pub(crate) use snf::smith_normal_form_left;

/// Dimension of `g ⊗ Z_2`.
pub fn tensor_z2(g: &AbelianGroup) -> usize {
    g.tensor_z2()
}

/// Dimension of `Tor(g, Z_2)`.
pub fn tor_z2(g: &AbelianGroup) -> usize {
    g.tor_z2()
}
