use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{charpoly, Mat};
use crate::repmod::endo_ring::{endo_structure, EndoStructure};
use crate::repmod::hom::hom_basis;
use crate::repmod::ops::{direct_sum, subrepresentation};
use crate::repmod::rep::{Morphism, Representation};

/// An indecomposable direct summand with its split embedding and projection.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

const SPLIT_ATTEMPTS: usize = 48;

/// Some non-nilpotent non-invertible endomorphism, if the endomorphism ring
/// is not local and splits far enough over the ground field.
fn splitting_endomorphism(m: &Representation, end: &EndoStructure) -> Option<Morphism> {
    let field = m.field();
    let basis = end.basis();
    let id = Morphism::identity(m);
    let try_one = |a: &Morphism| -> Option<Morphism> {
        let total = a.total_matrix();
        for root in charpoly(&total).roots() {
            let g = a.sub(&id.scale(&root));
            if !g.total_matrix().is_nilpotent() {
                return Some(g);
            }
        }
        None
    };
    for b in basis {
        if let Some(g) = try_one(b) {
            return Some(g);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..SPLIT_ATTEMPTS {
        let mut a = Morphism::zero(m, m);
        for b in basis {
            let c: i64 = rng.gen_range(-2..=2);
            if c != 0 {
                a = a.add(&b.scale(&field.from_i64(c)));
            }
        }
        if let Some(g) = try_one(&a) {
            return Some(g);
        }
    }
    None
}

/// `M = ker g^N ⊕ im g^N` for an endomorphism `g`.
fn fitting_split(m: &Representation, g: &Morphism) -> (Summand, Summand) {
    let field = m.field();
    let n = m.total_dim() as u32;
    let mut ker_b = Vec::new();
    let mut im_b = Vec::new();
    let mut proj_k = Vec::new();
    let mut proj_i = Vec::new();
    for x in 0..m.dims().len() {
        let p = g.map(x).pow(n);
        let k = Mat::from_columns(field, m.dim(x), &p.kernel_basis());
        let i = p.column_space();
        let inv = k.hstack(&i).inverse().expect("Fitting decomposition is direct");
        proj_k.push(inv.block(0, 0, k.cols(), m.dim(x)));
        proj_i.push(inv.block(k.cols(), 0, i.cols(), m.dim(x)));
        ker_b.push(k);
        im_b.push(i);
    }
    let (km, kinc) = subrepresentation(m, &ker_b).expect("kernel is a submodule");
    let (imm, iinc) = subrepresentation(m, &im_b).expect("image is a submodule");
    let kproj = Morphism::new_unchecked(m, &km, proj_k);
    let iproj = Morphism::new_unchecked(m, &imm, proj_i);
    (
        Summand {
            module: km,
            inclusion: kinc,
            projection: kproj,
        },
        Summand {
            module: imm,
            inclusion: iinc,
            projection: iproj,
        },
    )
}

/// Splits `m` into indecomposable summands with embeddings and projections,
/// ordered by decreasing dimension vector. Fails with `NonSplitEndomorphism`
/// when some endomorphism ring is not local yet no idempotent is reachable
/// over the ground field.
pub fn split(m: &Representation) -> Result<Vec<Summand>> {
    let mut parts = split_rec(m)?;
    parts.sort_by(|a, b| b.module.dims().cmp(a.module.dims()));
    Ok(parts)
}

fn split_rec(m: &Representation) -> Result<Vec<Summand>> {
    if m.is_zero() {
        return Ok(Vec::new());
    }
    let end = endo_structure(m)?;
    if end.is_local() {
        return Ok(vec![Summand {
            module: m.clone(),
            inclusion: Morphism::identity(m),
            projection: Morphism::identity(m),
        }]);
    }
    let g = splitting_endomorphism(m, &end).ok_or(Error::NonSplitEndomorphism)?;
    let (a, b) = fitting_split(m, &g);
    let mut out = Vec::new();
    for part in [a, b] {
        for s in split_rec(&part.module)? {
            out.push(Summand {
                module: s.module,
                inclusion: part.inclusion.after(&s.inclusion),
                projection: s.projection.after(&part.projection),
            });
        }
    }
    Ok(out)
}

pub fn is_indecomposable(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    let end = endo_structure(m)?;
    if end.is_local() {
        return Ok(true);
    }
    match splitting_endomorphism(m, &end) {
        Some(_) => Ok(false),
        None => Err(Error::NonSplitEndomorphism),
    }
}

/// Indecomposable summands grouped up to isomorphism, in order of first occurrence.
pub fn decompose(m: &Representation) -> Result<Vec<(Representation, usize)>> {
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for s in split(m)? {
        match groups.iter_mut().find(|(r, _)| is_isomorphic(r, &s.module, 0)) {
            Some(g) => g.1 += 1,
            None => groups.push((s.module, 1)),
        }
    }
    Ok(groups)
}

const RANDOM_TRIALS: [(usize, i64); 3] = [(32, 8), (16, 64), (16, 1024)];

fn invertible_combination(basis: &[Morphism], seed: u64) -> Option<Morphism> {
    let field = basis[0].source().field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combine = |coeffs: &[i64]| {
        let mut acc = Morphism::zero(basis[0].source(), basis[0].target());
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                acc = acc.add(&b.scale(&field.from_i64(*c)));
            }
        }
        acc
    };
    for (trials, range) in RANDOM_TRIALS {
        for _ in 0..trials {
            let coeffs: Vec<i64> = basis.iter().map(|_| rng.gen_range(-range..=range)).collect();
            let f = combine(&coeffs);
            if f.is_isomorphism() {
                return Some(f);
            }
        }
    }
    // deterministic sweep: single basis vectors, then sums of pairs
    for b in basis {
        if b.is_isomorphism() {
            return Some(b.clone());
        }
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let f = basis[i].add(&basis[j]);
            if f.is_isomorphism() {
                return Some(f);
            }
        }
    }
    None
}

/// An isomorphism `m → n`, searched among random combinations of a Hom basis
/// and then matched summand by summand.
pub fn find_isomorphism(m: &Representation, n: &Representation, seed: u64) -> Option<Morphism> {
    if !m.same_algebra(n) || m.dims() != n.dims() {
        return None;
    }
    if m.is_zero() {
        return Some(Morphism::zero(m, n));
    }
    let basis = hom_basis(m, n).ok()?;
    if basis.is_empty() {
        return None;
    }
    if let Some(f) = invertible_combination(&basis, seed) {
        return Some(f);
    }
    match_summands(m, n, seed)
}

/// Pairs up indecomposable summands of `m` and `n`; local endomorphism
/// rings make the random search on each pair reliable.
fn match_summands(m: &Representation, n: &Representation, seed: u64) -> Option<Morphism> {
    let (sm, sn) = match (split(m), split(n)) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            log::warn!("isomorphism search inconclusive: a summand does not split");
            return None;
        }
    };
    if sm.len() != sn.len() || sm.len() < 2 {
        return None;
    }
    let mut used = vec![false; sn.len()];
    let mut total = Morphism::zero(m, n);
    for a in &sm {
        let mut found = None;
        for (k, b) in sn.iter().enumerate() {
            if used[k] || a.module.dims() != b.module.dims() {
                continue;
            }
            let Ok(basis) = hom_basis(&a.module, &b.module) else {
                continue;
            };
            if basis.is_empty() {
                continue;
            }
            if let Some(f) = invertible_combination(&basis, seed) {
                found = Some((k, f));
                break;
            }
        }
        let (k, f) = found?;
        used[k] = true;
        total = total.add(&sn[k].inclusion.after(&f).after(&a.projection));
    }
    total.is_isomorphism().then_some(total)
}

pub fn is_isomorphic(m: &Representation, n: &Representation, seed: u64) -> bool {
    find_isomorphism(m, n, seed).is_some()
}

/// Rebuilds `⊕ S^{mult}` from a decomposition.
pub fn recompose(m: &Representation, parts: &[(Representation, usize)]) -> Representation {
    let mods: Vec<Representation> = parts
        .iter()
        .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k))
        .collect();
    direct_sum(m.algebra(), &mods).0
}
