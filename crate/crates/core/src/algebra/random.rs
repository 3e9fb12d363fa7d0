use std::sync::Arc;

use rand::Rng;

use crate::algebra::presentation::{Algebra, AlgebraPresentation, Relation};
use crate::algebra::quiver::{Arrow, Quiver};
use crate::exactla::Field;

/// A random Nakayama algebra on the linear quiver `1 → 2 → … → n` with
/// `1 ≤ n ≤ max_vertices`, given by a random admissible Kupisch series.
pub fn random_nakayama<R: Rng>(rng: &mut R, max_vertices: usize) -> Algebra {
    let n = rng.gen_range(1..=max_vertices.max(1));
    nakayama(&random_kupisch(rng, n))
}

/// Kupisch series `c` of a linear Nakayama algebra: `c[n-1] = 1`,
/// `2 ≤ c[i] ≤ c[i+1] + 1` otherwise.
pub fn random_kupisch<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut c = vec![1; n];
    for i in (0..n.saturating_sub(1)).rev() {
        c[i] = rng.gen_range(2..=c[i + 1] + 1);
    }
    c
}

/// The linear Nakayama algebra whose projective `P_i` has length `c[i]`.
pub fn nakayama(c: &[usize]) -> Algebra {
    let n = c.len();
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = (0..n.saturating_sub(1))
        .map(|i| Arrow {
            name: format!("a{}", i + 1),
            source: i,
            target: i + 1,
        })
        .collect();
    let quiver = Quiver::new(vertices, arrows).expect("linear quiver");
    let mut relations = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let len = c[i];
        if i + len < n && c[i + 1] >= len {
            let arrows: Vec<usize> = (i..i + len).rev().collect();
            relations.push(Relation::monomial(quiver.path(arrows).expect("path")).expect("monomial"));
        }
    }
    Arc::new(AlgebraPresentation::build(Field::Rational, quiver, relations, None).expect("admissible"))
}
