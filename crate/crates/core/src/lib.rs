//! Finite relative Rota-Baxter groups: validation, operator enumeration,
//! abelian extensions, their second cohomology, and the Wells sequence for
//! lifting automorphisms.

pub mod cohomology;
pub mod corpus;
pub mod extension;
pub mod groupkit;
pub mod json;
pub mod module;
pub mod rrb;
pub mod wells;
