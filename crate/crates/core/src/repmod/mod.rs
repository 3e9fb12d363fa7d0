//! Modules over bound quiver algebras as quiver representations.

mod decomp;
mod endo_ring;
mod hom;
mod ops;
mod random;
mod rep;
mod resolution;

pub use decomp::{decompose, find_isomorphism, is_indecomposable, is_isomorphic, recompose, split, Summand};
pub use endo_ring::{endo_structure, EndoStructure};
pub use hom::{has_retraction, has_section, hom_basis, hom_dim, HomSpace};
pub use ops::{cokernel, direct_sum, dual, dual_morphism, dual_over, image, kernel, quotient, radical, subrepresentation, top};
pub use random::{random_module, random_morphism};
pub use rep::{Morphism, Representation};
pub use resolution::{ext_dim, pd, projective_cover, projective_resolution, ProjectiveSum, Resolution};

#[cfg(test)]
mod tests;
