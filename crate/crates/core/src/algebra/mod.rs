//! Bound quiver algebras `kQ/I`: quivers, paths, relations, and presentations
//! with a basis of irreducible paths.

mod presentation;
mod quiver;
mod random;

pub use presentation::{default_length_cap, Algebra, AlgebraPresentation, BasisCombo, Relation};
pub use quiver::{Arrow, Path, Quiver};
pub use random::{nakayama, random_kupisch, random_nakayama};

#[cfg(test)]
mod tests;
