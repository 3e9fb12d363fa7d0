//! Bundled example algebras and gradings.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::format::{AlgebraSpecFile, GradingSpecFile};
use crate::Algebra;

pub const A2: &str = include_str!("../fixtures/a2.toml");
pub const EX49A: &str = include_str!("../fixtures/ex49a.toml");
pub const EX49B: &str = include_str!("../fixtures/ex49b.toml");
pub const EX65A: &str = include_str!("../fixtures/ex65a.toml");
pub const EX65A_Z2: &str = include_str!("../fixtures/ex65a_z2.toml");
pub const TRIVIAL_Z2: &str = include_str!("../fixtures/trivial_z2.toml");

pub const ALGEBRA_NAMES: [&str; 4] = ["A2", "EX49A", "EX49B", "EX65A"];

pub fn algebra_source(name: &str) -> Option<&'static str> {
    match name.to_ascii_uppercase().as_str() {
        "A2" => Some(A2),
        "EX49A" => Some(EX49A),
        "EX49B" => Some(EX49B),
        "EX65A" => Some(EX65A),
        _ => None,
    }
}

pub fn algebra_spec(name: &str) -> Result<AlgebraSpecFile> {
    let src = algebra_source(name).ok_or_else(|| Error::Parse(format!("no fixture named {name:?}")))?;
    AlgebraSpecFile::parse(src)
}

pub fn algebra(name: &str) -> Result<Algebra> {
    Ok(Arc::new(algebra_spec(name)?.to_presentation()?))
}

pub fn grading_source(name: &str) -> Option<&'static str> {
    match name.to_ascii_uppercase().as_str() {
        "EX65A_Z2" => Some(EX65A_Z2),
        "TRIVIAL_Z2" => Some(TRIVIAL_Z2),
        _ => None,
    }
}

pub fn grading_spec(name: &str) -> Result<GradingSpecFile> {
    let src = grading_source(name).ok_or_else(|| Error::Parse(format!("no grading fixture named {name:?}")))?;
    GradingSpecFile::parse(src)
}
