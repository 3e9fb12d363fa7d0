//! Exact linear algebra over the rationals and prime fields.

mod mat;
mod poly;
mod scalar;

pub use mat::{Echelon, Mat};
pub use poly::{charpoly, Poly};
pub use scalar::{Field, Scalar};
