//! Tilting modules: the axioms, add(T)-approximations, mutation and the
//! Hasse diagram of basic tilting modules.

mod diagram;
mod session;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::repmod::{direct_sum, split, Morphism, Representation};

pub use diagram::{DiagramReport, ExchangeEdge, SubDiagram, TiltingDiagram, DEFAULT_VERTEX_CAP};
pub use session::{Fingerprint, Mutation, Session};

/// An ordered list of indecomposable summands.
#[derive(Clone, Debug)]
pub struct TiltingCandidate {
    summands: Vec<Representation>,
}

impl TiltingCandidate {
    pub fn new(summands: Vec<Representation>) -> TiltingCandidate {
        TiltingCandidate { summands }
    }

    /// Splits a module into its indecomposable summands.
    pub fn from_module(m: &Representation) -> Result<TiltingCandidate> {
        Ok(TiltingCandidate::new(split(m)?.into_iter().map(|s| s.module).collect()))
    }

    pub fn regular(algebra: &Algebra) -> TiltingCandidate {
        TiltingCandidate::new((0..algebra.num_vertices()).map(|x| Representation::projective(algebra, x)).collect())
    }

    pub fn dual_regular(algebra: &Algebra) -> TiltingCandidate {
        TiltingCandidate::new((0..algebra.num_vertices()).map(|x| Representation::injective(algebra, x)).collect())
    }

    pub fn summands(&self) -> &[Representation] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn module(&self, algebra: &Algebra) -> Representation {
        direct_sum(algebra, &self.summands).0
    }

    fn algebra(&self) -> Result<&Algebra> {
        self.summands
            .first()
            .map(Representation::algebra)
            .ok_or_else(|| Error::InvalidModule("empty tilting candidate".into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TiltingVerdict {
    Yes,
    No(String),
    ExceedsCap(usize),
}

impl TiltingVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, TiltingVerdict::Yes)
    }
}

/// A minimal approximation: `x → ⊕ G_j^{m_j}` (left) or `⊕ G_j^{m_j} → y` (right),
/// with the copies of each generator consecutive.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub morphism: Morphism,
    pub generators: Vec<Representation>,
    pub multiplicities: Vec<usize>,
}

/// `0 → A → T_1 → … → T_r → 0`.
#[derive(Clone, Debug)]
pub struct Coresolution {
    pub module: Representation,
    /// `terms[k].morphism` approximates the `k`-th cokernel.
    pub terms: Vec<Approximation>,
    /// `maps[0]: A → T_1`, `maps[k]: T_k → T_{k+1}`.
    pub maps: Vec<Morphism>,
}

impl Coresolution {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, k: usize) -> &Representation {
        self.terms[k].morphism.target()
    }
}

/// `0 → left.source → left.target → right.target → 0`.
#[derive(Clone, Debug)]
pub struct ExchangeSequence {
    pub left: Morphism,
    pub right: Morphism,
    /// Session ids of the shared summands and their multiplicities in the middle term.
    pub generators: Vec<usize>,
    pub multiplicities: Vec<usize>,
}

impl ExchangeSequence {
    pub fn middle(&self) -> &Representation {
        self.left.target()
    }
}

fn session_for(t: &TiltingCandidate, cap: Option<usize>) -> Result<(Session, Vec<usize>)> {
    let mut s = Session::new(t.algebra()?, cap, 0);
    let ids = s.intern_all(t.summands())?;
    Ok((s, ids))
}

pub fn is_selforthogonal(t: &TiltingCandidate, cap: Option<usize>) -> Result<bool> {
    let (mut s, ids) = session_for(t, cap)?;
    s.is_selforthogonal(&ids)
}

#[allow(non_snake_case)]
pub fn coresolution_of_A(t: &TiltingCandidate, cap: Option<usize>) -> Result<Option<Coresolution>> {
    let (mut s, mut ids) = session_for(t, cap)?;
    ids.sort_unstable();
    ids.dedup();
    s.coresolution(&ids)
}

pub fn is_tilting(t: &TiltingCandidate, cap: Option<usize>) -> TiltingVerdict {
    match session_for(t, cap) {
        Ok((mut s, ids)) => s.tilting_verdict(&ids),
        Err(e) => TiltingVerdict::No(e.to_string()),
    }
}

fn generator_session(x: &Representation, gens: &[Representation]) -> Result<(Session, Vec<usize>)> {
    let mut s = Session::new(x.algebra(), None, 0);
    let mut ids = Vec::new();
    for g in gens {
        for part in split(g)? {
            let id = s.intern(&part.module)?;
            if !ids.contains(&id) {
                ids.push(id);
            }
        }
    }
    Ok((s, ids))
}

/// Minimal left `add(gens)`-approximation of `x`.
pub fn left_approximation(x: &Representation, gens: &[Representation]) -> Result<Approximation> {
    let (mut s, ids) = generator_session(x, gens)?;
    s.left_approximation(x, None, &ids)
}

/// Minimal right `add(gens)`-approximation of `y`.
pub fn right_approximation(y: &Representation, gens: &[Representation]) -> Result<Approximation> {
    let (mut s, ids) = generator_session(y, gens)?;
    s.right_approximation(y, None, &ids)
}

fn mutate(t: &TiltingCandidate, i: usize, cap: Option<usize>, left: bool) -> Result<Option<(TiltingCandidate, Mutation)>> {
    if i >= t.len() {
        return Err(Error::MutationRejected(format!("no summand at index {i}")));
    }
    let (mut s, ids) = session_for(t, cap)?;
    let m = if left { s.mutate_left(&ids, i)? } else { s.mutate_right(&ids, i)? };
    Ok(m.map(|m| {
        let summands = m.ids.iter().map(|&k| s.module(k).clone()).collect();
        (TiltingCandidate::new(summands), m)
    }))
}

/// `T = X ⊕ T̄ → T' = Y ⊕ T̄` with `0 → X → M → Y → 0`, `X` at index `i`.
pub fn mutate_left(t: &TiltingCandidate, i: usize, cap: Option<usize>) -> Result<Option<(TiltingCandidate, Mutation)>> {
    mutate(t, i, cap, true)
}

/// `T' = Y ⊕ T̄ → T = X ⊕ T̄` with `0 → Y → M → X → 0`, `X` at index `i`.
pub fn mutate_right(t: &TiltingCandidate, i: usize, cap: Option<usize>) -> Result<Option<(TiltingCandidate, Mutation)>> {
    mutate(t, i, cap, false)
}

pub fn hasse_diagram(
    algebra: &Algebra,
    start: &TiltingCandidate,
    vertex_cap: Option<usize>,
    pd_cap: Option<usize>,
) -> Result<TiltingDiagram> {
    let mut s = Session::new(algebra, pd_cap, 0);
    let ids = s.intern_all(start.summands())?;
    s.hasse_diagram(&ids, vertex_cap.unwrap_or(DEFAULT_VERTEX_CAP))
}

/// The part of the diagram between `top` and `bottom`, grown from `top`
/// by left mutations through vertices `X` with `bottom ≤ X`.
pub fn interval_diagram(
    algebra: &Algebra,
    top: &TiltingCandidate,
    bottom: &TiltingCandidate,
    vertex_cap: Option<usize>,
    pd_cap: Option<usize>,
) -> Result<TiltingDiagram> {
    let mut s = Session::new(algebra, pd_cap, 0);
    let t = s.intern_all(top.summands())?;
    let b = s.intern_all(bottom.summands())?;
    s.interval_diagram(&t, &b, vertex_cap.unwrap_or(DEFAULT_VERTEX_CAP))
}

/// Breadth-first part of the diagram with at most `vertex_cap` vertices.
pub fn truncated_diagram(
    algebra: &Algebra,
    start: &TiltingCandidate,
    vertex_cap: usize,
    pd_cap: Option<usize>,
) -> Result<TiltingDiagram> {
    let mut s = Session::new(algebra, pd_cap, 0);
    let ids = s.intern_all(start.summands())?;
    s.truncated_diagram(&ids, vertex_cap)
}

/// `t1 ≤ t2`, tested as `Ext^i(t2, t1) = 0` for `i ≥ 1`.
pub fn leq(t1: &TiltingCandidate, t2: &TiltingCandidate, cap: Option<usize>) -> Result<bool> {
    let mut s = Session::new(t1.algebra()?, cap, 0);
    let a = s.intern_all(t1.summands())?;
    let b = s.intern_all(t2.summands())?;
    s.leq(&a, &b)
}

#[cfg(test)]
mod tests;
