//! Inputs shared by the benchmarks.

use qtilt::covering::build_covering;
use qtilt::{fixtures, Algebra, CoveringData, Grading};

pub fn algebra(name: &str) -> Algebra {
    fixtures::algebra(name).expect("bundled fixture")
}

/// The connected double cover of EX65A.
pub fn ex65a_cover() -> CoveringData {
    let a = algebra("EX65A");
    let spec = fixtures::grading_spec("EX65A_Z2").expect("bundled grading");
    let (g, w) = Grading::from_spec(&a, &spec).expect("grading fits");
    build_covering(&a, &w, &g).expect("homogeneous grading")
}
