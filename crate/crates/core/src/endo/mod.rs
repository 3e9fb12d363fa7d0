//! `End_A(T)` as a bound quiver algebra and the transport `X ↦ Hom_A(X, T)`.

mod verify;

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraPresentation, Arrow, Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar};
use crate::repmod::{endo_structure, HomSpace, Morphism, Representation};
use crate::tilting::{mutate_left, TiltingCandidate};

pub use verify::{
    lemma41_check, prop43_check, prop46_check, verify_thm45, Assertion, Caps, CheckReport, Thm45Report,
};

/// `B = End_A(T)` presented as `kQ_B / I_B`, with vertex `i` the summand
/// `T_i` and each arrow `i → j` a chosen radical morphism `T_i → T_j`.
#[derive(Clone, Debug)]
pub struct EndoPresentation {
    algebra: Algebra,
    summands: Vec<Representation>,
    arrows: Vec<Morphism>,
    homs: Vec<Vec<HomSpace>>,
}

impl EndoPresentation {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn summands(&self) -> &[Representation] {
        &self.summands
    }

    pub fn arrow_morphism(&self, a: usize) -> &Morphism {
        &self.arrows[a]
    }

    /// `Hom_A(T_i, T_j)`.
    pub fn hom(&self, i: usize, j: usize) -> &HomSpace {
        &self.homs[i][j]
    }

    /// The morphism `T_s → T_t` a path evaluates to.
    pub fn evaluate(&self, p: &Path) -> Morphism {
        eval_path(&self.arrows, &self.summands, p)
    }

    /// Whether multiplying basis paths in `B` agrees with composing the
    /// morphisms they evaluate to.
    pub fn check_composition(&self) -> bool {
        let b = &self.algebra;
        let evals: Vec<Morphism> = b.basis().iter().map(|p| self.evaluate(p)).collect();
        for i in 0..evals.len() {
            for j in 0..evals.len() {
                let (pi, pj) = (&b.basis()[i], &b.basis()[j]);
                let prod = b.mul_basis(i, j);
                if pj.target() != pi.source() {
                    if !prod.is_empty() {
                        return false;
                    }
                    continue;
                }
                let direct = evals[i].after(&evals[j]);
                let mut via = Morphism::zero(direct.source(), direct.target());
                for (k, c) in prod {
                    via = via.add(&evals[*k].scale(c));
                }
                if via.flatten() != direct.flatten() {
                    return false;
                }
            }
        }
        true
    }
}

fn independent_extension(field: crate::exactla::Field, span: &[Vec<Scalar>], cands: &[Vec<Scalar>]) -> Vec<usize> {
    let mut rows: Vec<Vec<Scalar>> = span.to_vec();
    let rank_of = |rows: &Vec<Vec<Scalar>>| {
        if rows.is_empty() || rows[0].is_empty() {
            0
        } else {
            Mat::from_rows(field, rows.clone()).unwrap().rank()
        }
    };
    let mut rank = rank_of(&rows);
    let mut out = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        rows.push(c.clone());
        let r = rank_of(&rows);
        if r > rank {
            rank = r;
            out.push(i);
        } else {
            rows.pop();
        }
    }
    out
}

fn span_basis(field: crate::exactla::Field, vecs: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if vecs.is_empty() || vecs[0].is_empty() {
        return Vec::new();
    }
    let e = Mat::from_rows(field, vecs).unwrap().echelon();
    (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
}

/// Presents `End_A(T)` for basic `T`. Arrows are radical morphisms completing
/// `rad² ` to `rad`; relations span the kernel on paths of length two up to
/// the Loewy length, then are thinned while the dimension stays put.
pub fn endo_presentation(t: &TiltingCandidate) -> Result<EndoPresentation> {
    present(t, None)
}

/// Extra data for presenting a `G`-graded `End_A(T)` by homogeneous generators.
pub(crate) struct GradedChoice<'a> {
    /// Spanning sets of homogeneous radical morphisms `T_i → T_j`.
    pub rad: Vec<Vec<Vec<Morphism>>>,
    /// Degree of a nonzero homogeneous morphism `T_i → T_j`.
    pub degree: &'a dyn Fn(usize, usize, &Morphism) -> Result<usize>,
}

pub(crate) fn present(t: &TiltingCandidate, graded: Option<&GradedChoice>) -> Result<EndoPresentation> {
    let summands = t.summands().to_vec();
    let n = summands.len();
    if n == 0 {
        return Err(Error::InvalidModule("empty tilting candidate".into()));
    }
    let field = summands[0].field();
    let mut homs = Vec::with_capacity(n);
    for ti in &summands {
        homs.push(summands.iter().map(|tj| HomSpace::new(ti, tj)).collect::<Result<Vec<_>>>()?);
    }
    // rad[i][j]: radical morphisms T_i → T_j
    let mut rad: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let end = endo_structure(&summands[i])?;
        if !end.is_local() {
            return Err(Error::InvalidModule(format!("summand {} is not indecomposable", i + 1)));
        }
        for j in 0..n {
            rad[i][j] = if i == j { end.radical_basis() } else { homs[i][j].basis().to_vec() };
        }
    }
    if let Some(g) = graded {
        rad = g.rad.clone();
    }
    let mul = |left: &Vec<Vec<Vec<Morphism>>>, i: usize, j: usize| -> Vec<Vec<Scalar>> {
        let mut v = Vec::new();
        for k in 0..n {
            for f in &left[i][k] {
                for g in &rad[k][j] {
                    v.push(g.after(f).flatten());
                }
            }
        }
        v
    };
    // arrows: complement of rad² in rad
    let mut arrows_q = Vec::new();
    let mut arrow_maps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let sq = span_basis(field, mul(&rad, i, j));
            let cands: Vec<Vec<Scalar>> = rad[i][j].iter().map(Morphism::flatten).collect();
            for k in independent_extension(field, &sq, &cands) {
                arrows_q.push(Arrow {
                    name: format!("x{}", arrows_q.len() + 1),
                    source: i,
                    target: j,
                });
                arrow_maps.push(rad[i][j][k].clone());
            }
        }
    }
    // Loewy length: least L with rad^L = 0
    let mut power = rad.clone();
    let mut loewy = 1;
    while power.iter().flatten().any(|v| !v.is_empty()) {
        let mut next: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let basis = span_basis(field, mul(&power, i, j));
                next[i][j] = basis
                    .iter()
                    .map(|v| Morphism::from_flat(&summands[i], &summands[j], v))
                    .collect();
            }
        }
        power = next;
        loewy += 1;
    }
    let names: Vec<String> = (1..=n).map(|i| format!("T{i}")).collect();
    let quiver = Quiver::new(names, arrows_q)?;
    let arrows: Vec<Morphism> = arrow_maps;
    let mut relations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let paths: Vec<Path> = (2..=loewy)
                .flat_map(|l| quiver.paths_of_length(l))
                .filter(|p| p.source() == i && p.target() == j)
                .collect();
            if paths.is_empty() {
                continue;
            }
            let evals: Vec<Morphism> = paths.iter().map(|p| eval_path(&arrows, &summands, p)).collect();
            // graded case: zero paths alone, the rest grouped by degree
            let groups: Vec<Vec<usize>> = match graded {
                None => vec![(0..paths.len()).collect()],
                Some(g) => {
                    let mut groups: Vec<(Option<usize>, Vec<usize>)> = Vec::new();
                    for (k, e) in evals.iter().enumerate() {
                        let key = if e.is_zero() { None } else { Some((g.degree)(i, j, e)?) };
                        match groups.iter_mut().find(|(d, _)| key.is_some() && *d == key) {
                            Some(grp) => grp.1.push(k),
                            None => groups.push((key, vec![k])),
                        }
                    }
                    groups.into_iter().map(|(_, v)| v).collect()
                }
            };
            for group in groups {
                let cols: Vec<Vec<Scalar>> = group.iter().map(|&k| evals[k].flatten()).collect();
                let rows = cols[0].len();
                let kernel = if rows == 0 {
                    (0..group.len())
                        .map(|k| (0..group.len()).map(|l| if k == l { field.one() } else { field.zero() }).collect())
                        .collect()
                } else {
                    Mat::from_columns(field, rows, &cols).kernel_basis()
                };
                for v in kernel {
                    let terms: Vec<(Scalar, Path)> = v
                        .iter()
                        .zip(&group)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, &k)| (c.clone(), paths[k].clone()))
                        .collect();
                    relations.push(Relation::new(terms)?);
                }
            }
        }
    }
    let target_dim: usize = homs.iter().flatten().map(HomSpace::dim).sum();
    let cap = Some(loewy + 2);
    let build = |rels: &[Relation]| AlgebraPresentation::build(field, quiver.clone(), rels.to_vec(), cap);
    let full = build(&relations)?;
    if full.dim() != target_dim {
        return Err(Error::AssertionFailed(format!(
            "presentation of End(T) has dimension {}, expected {target_dim}",
            full.dim()
        )));
    }
    // drop redundant relations, longest leading path first
    let mut order: Vec<usize> = (0..relations.len()).collect();
    order.sort_by(|&a, &b| leading_len(&relations[b]).cmp(&leading_len(&relations[a])));
    let mut keep = vec![true; relations.len()];
    for k in order {
        keep[k] = false;
        let trial: Vec<Relation> = relations.iter().zip(&keep).filter(|(_, &k)| k).map(|(r, _)| r.clone()).collect();
        match build(&trial) {
            Ok(b) if b.dim() == target_dim => {}
            _ => keep[k] = true,
        }
    }
    let relations: Vec<Relation> = relations.into_iter().zip(keep).filter(|(_, k)| *k).map(|(r, _)| r).collect();
    let algebra = Arc::new(build(&relations)?);
    Ok(EndoPresentation {
        algebra,
        summands,
        arrows,
        homs,
    })
}

fn leading_len(r: &Relation) -> usize {
    r.terms().iter().map(|(_, p)| p.len()).max().unwrap_or(0)
}

fn eval_path(arrows: &[Morphism], summands: &[Representation], p: &Path) -> Morphism {
    p.arrows()
        .iter()
        .rev()
        .fold(Morphism::identity(&summands[p.source()]), |acc, &a| arrows[a].after(&acc))
}

/// `X_T = Hom_A(X, T)` as a left `B`-module: vertex `i` carries
/// `Hom_A(X, T_i)` and an arrow `φ` acts by `u ↦ φ ∘ u`.
#[derive(Clone, Debug)]
pub struct TransportImage {
    source: Representation,
    module: Representation,
    homs: Vec<HomSpace>,
}

impl TransportImage {
    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    /// The basis of `Hom_A(X, T_i)` used at vertex `i`.
    pub fn hom(&self, i: usize) -> &HomSpace {
        &self.homs[i]
    }
}

pub fn transport(x: &Representation, e: &EndoPresentation) -> Result<TransportImage> {
    let homs = e
        .summands
        .iter()
        .map(|ti| HomSpace::new(x, ti))
        .collect::<Result<Vec<_>>>()?;
    let b = e.algebra();
    let field = x.field();
    let dims: Vec<usize> = homs.iter().map(HomSpace::dim).collect();
    let maps = b
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, arr)| {
            let cols: Vec<Vec<Scalar>> = homs[arr.source]
                .basis()
                .iter()
                .map(|u| {
                    homs[arr.target]
                        .coords(&e.arrows[k].after(u))
                        .expect("composite lies in Hom(X, T_j)")
                })
                .collect();
            if cols.is_empty() {
                Mat::zeros(field, dims[arr.target], 0)
            } else {
                Mat::from_columns(field, dims[arr.target], &cols)
            }
        })
        .collect();
    let module = Representation::new(b, dims, maps)?;
    Ok(TransportImage {
        source: x.clone(),
        module,
        homs,
    })
}

/// `u_T : Y_T → X_T`, `v ↦ v ∘ u`, for `u : X → Y`.
pub fn transport_mor(u: &Morphism, y_t: &TransportImage, x_t: &TransportImage) -> Result<Morphism> {
    let field = u.source().field();
    let maps = (0..y_t.homs.len())
        .map(|i| {
            let cols: Vec<Vec<Scalar>> = y_t.homs[i]
                .basis()
                .iter()
                .map(|v| {
                    x_t.homs[i]
                        .coords(&v.after(u))
                        .ok_or_else(|| Error::InvalidMorphism("composite outside Hom(X, T_i)".into()))
                })
                .collect::<Result<_>>()?;
            let rows = x_t.homs[i].dim();
            Ok(if cols.is_empty() { Mat::zeros(field, rows, 0) } else { Mat::from_columns(field, rows, &cols) })
        })
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(y_t.module(), x_t.module(), maps)
}

/// Convenience form computing both transports.
pub fn transport_morphism(u: &Morphism, e: &EndoPresentation) -> Result<Morphism> {
    let y_t = transport(u.target(), e)?;
    let x_t = transport(u.source(), e)?;
    transport_mor(u, &y_t, &x_t)
}

/// The map `θ_{X,Y} : Hom_A(X, Y) → Hom_B(Y_T, X_T)`, `u ↦ u_T`, in Hom bases.
#[derive(Clone, Debug, Serialize)]
pub struct Theta {
    #[serde(skip)]
    pub matrix: Mat,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

impl Theta {
    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

pub fn theta(x: &Representation, y: &Representation, e: &EndoPresentation) -> Result<Theta> {
    let field = x.field();
    let hom_a = HomSpace::new(x, y)?;
    let x_t = transport(x, e)?;
    let y_t = transport(y, e)?;
    let hom_b = HomSpace::new(y_t.module(), x_t.module())?;
    let cols = hom_a
        .basis()
        .iter()
        .map(|u| {
            let ut = transport_mor(u, &y_t, &x_t)?;
            hom_b
                .coords(&ut)
                .ok_or_else(|| Error::InvalidMorphism("u_T is not a B-morphism".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let matrix = if cols.is_empty() {
        Mat::zeros(field, hom_b.dim(), 0)
    } else {
        Mat::from_columns(field, hom_b.dim(), &cols)
    };
    Ok(Theta {
        rank: matrix.rank(),
        source_dim: hom_a.dim(),
        target_dim: hom_b.dim(),
        matrix,
    })
}

/// The APR tilt at a sink `x`: the regular module with `P_x` exchanged.
pub fn apr_tilt(algebra: &Algebra, x: usize) -> Result<TiltingCandidate> {
    if !algebra.quiver().is_sink(x) {
        return Err(Error::NotASink(algebra.quiver().vertex_name(x).to_string()));
    }
    match mutate_left(&TiltingCandidate::regular(algebra), x, None)? {
        Some((t, _)) => Ok(t),
        None => Err(Error::MutationRejected(format!(
            "no exchange at the projective of vertex {}",
            algebra.quiver().vertex_name(x)
        ))),
    }
}

/// A vertex bijection `σ` with `#arrows(i → j) = #arrows'(σi → σj)`.
pub fn quiver_shape_isomorphism(q1: &Quiver, q2: &Quiver) -> Option<Vec<usize>> {
    let n = q1.num_vertices();
    if n != q2.num_vertices() || q1.num_arrows() != q2.num_arrows() {
        return None;
    }
    let count = |q: &Quiver| {
        let mut c = vec![vec![0usize; n]; n];
        for a in q.arrows() {
            c[a.source][a.target] += 1;
        }
        c
    };
    let (c1, c2) = (count(q1), count(q2));
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(k: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, c1: &[Vec<usize>], c2: &[Vec<usize>]) -> bool {
        let n = perm.len();
        if k == n {
            return true;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            perm[k] = v;
            let ok = (0..=k).all(|i| c1[i][k] == c2[perm[i]][v] && c1[k][i] == c2[v][perm[i]]);
            if ok {
                used[v] = true;
                if go(k + 1, perm, used, c1, c2) {
                    return true;
                }
                used[v] = false;
            }
        }
        perm[k] = usize::MAX;
        false
    }
    go(0, &mut perm, &mut used, &c1, &c2).then_some(perm)
}
