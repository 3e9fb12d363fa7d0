use rand::Rng;

use crate::algebra::Algebra;
use crate::repmod::hom::hom_basis;
use crate::repmod::ops::cokernel;
use crate::repmod::rep::{Morphism, Representation};
use crate::repmod::resolution::ProjectiveSum;

/// A random finitely presented module: `⊕ P_{x_j}` modulo the submodule
/// generated by a few random elements. Coefficients are small integers.
pub fn random_module<R: Rng>(algebra: &Algebra, rng: &mut R, max_generators: usize) -> Representation {
    let n = algebra.num_vertices();
    let k = rng.gen_range(1..=max_generators.max(1));
    let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
    let top = ProjectiveSum::new(algebra, gens);
    let r = rng.gen_range(0..=k);
    let rel_vertices: Vec<usize> = (0..r).map(|_| rng.gen_range(0..n)).collect();
    let rels = ProjectiveSum::new(algebra, rel_vertices.clone());
    let field = algebra.field();
    let elements: Vec<Vec<_>> = rel_vertices
        .iter()
        .map(|&y| {
            (0..top.module().dim(y))
                .map(|_| field.from_i64(rng.gen_range(-2..=2)))
                .collect()
        })
        .collect();
    let f = rels.map_to(top.module(), &elements);
    cokernel(&f).0
}

/// A random combination of a Hom basis with small integer coefficients.
pub fn random_morphism<R: Rng>(m: &Representation, n: &Representation, rng: &mut R) -> Morphism {
    let field = m.field();
    let mut acc = Morphism::zero(m, n);
    for b in hom_basis(m, n).expect("same algebra") {
        let c = rng.gen_range(-3..=3);
        if c != 0 {
            acc = acc.add(&b.scale(&field.from_i64(c)));
        }
    }
    acc
}
