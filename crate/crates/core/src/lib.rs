//! Exact computations with tilting modules over bound quiver algebras.

pub mod algebra;
pub mod error;
pub mod exactla;
pub mod fixtures;
pub mod format;
pub mod repmod;
pub mod tilting;
pub mod endo;
pub mod covering;

pub use algebra::{Algebra, AlgebraPresentation, Arrow, Path, Quiver, Relation};
pub use covering::{CoveringData, FiniteGroup, Grading};
pub use endo::{Assertion, EndoPresentation};
pub use error::{Error, Result};
pub use exactla::{Field, Mat, Scalar};
pub use repmod::{Morphism, Representation};
pub use tilting::{TiltingCandidate, TiltingDiagram, TiltingVerdict};
