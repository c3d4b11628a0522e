//! Finite groups by Cayley table, homomorphisms, and exact integer linear
//! algebra on finite abelian groups.

pub mod abelian;
pub mod group;
pub mod hom;
pub mod snf;

pub use abelian::{
    abelian_presentation, hom_kernel, hom_kernel_image_quotient, AbelianPresentation, Cokernel, FinAbHom,
    KernelImageCokernel, Subgroup,
};
pub use group::{generating_set, is_normal, is_subgroup, normality_witness, subgroup_closure, FiniteGroup, GroupError};
pub use hom::{
    automorphism_group, direct_product, find_isomorphism, homomorphisms, is_homomorphism, quotient_group,
    DirectProduct, GroupHom, Quotient, DEFAULT_MAX_ORDER,
};
pub use snf::{smith_normal_form, IntMatrix, Snf, SnfFlags};
