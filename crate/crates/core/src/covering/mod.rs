//! Galois coverings with a finite abelian group, built from homogeneous
//! gradings as smash products, together with push-down, pull-up, twists,
//! first-kind tests and the covering of `End_A(T)`.

mod endo_cover;
mod functors;
mod group;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraPresentation, Arrow, BasisCombo, Path, Quiver, Relation};
use crate::endo::Assertion;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar};

pub use endo_cover::{endo_covering, EndoCovering};
pub use functors::{
    first_kind_test, g_twist, homogeneous_components, module_first_kind, pullup, pullup_morphism,
    pullup_tilting_check, pushdown, pushdown_morphism, summands_first_kind, FirstKindReport, FirstKindWitness,
    HomogeneousComponent,
};
pub use group::{FiniteGroup, GroupElement, Grading};

/// Whether every relation is a combination of paths of one weight.
pub fn check_homogeneous(algebra: &AlgebraPresentation, w: &Grading, g: &FiniteGroup) -> bool {
    homogeneity_violation(algebra, w, g).is_none()
}

fn homogeneity_violation(algebra: &AlgebraPresentation, w: &Grading, g: &FiniteGroup) -> Option<String> {
    let q = algebra.quiver();
    for r in algebra.relations() {
        let weights: Vec<GroupElement> = r.terms().iter().map(|(_, p)| w.path_weight(g, p)).collect();
        if weights.iter().any(|x| *x != weights[0]) {
            let desc: Vec<String> = r
                .terms()
                .iter()
                .zip(&weights)
                .map(|((_, p), x)| format!("{} has weight {}", q.path_name(p), g.format(x)))
                .collect();
            return Some(desc.join(", "));
        }
    }
    None
}

/// A covering `F : C → A` given by a presentation of `C` and the fiber and
/// sheet of every vertex and arrow of `C`. The group acts by moving sheets.
#[derive(Clone, Debug)]
pub struct CoveringData {
    base: Algebra,
    group: FiniteGroup,
    grading: Grading,
    cover: Algebra,
    vertex_fiber: Vec<usize>,
    vertex_sheet: Vec<usize>,
    arrow_fiber: Vec<usize>,
    arrow_sheet: Vec<usize>,
    /// `vertex_at[x][g]`
    vertex_at: Vec<Vec<usize>>,
    arrow_at: Vec<Vec<usize>>,
}

/// The smash-product covering: vertices `(x, g)` numbered `g·n + x`, arrows
/// `(a, g) : (s, g) → (t, g + W(a))` numbered `g·m + a`.
pub fn build_covering(base: &Algebra, w: &Grading, g: &FiniteGroup) -> Result<CoveringData> {
    if let Some(v) = homogeneity_violation(base, w, g) {
        return Err(Error::HeterogeneousGrading(v));
    }
    if w.len() != base.quiver().num_arrows() {
        return Err(Error::HeterogeneousGrading(format!(
            "{} weights for {} arrows",
            w.len(),
            base.quiver().num_arrows()
        )));
    }
    let q = base.quiver();
    let (n, m, order) = (q.num_vertices(), q.num_arrows(), g.order());
    let trivial = order == 1;
    let mut vertices = Vec::with_capacity(n * order);
    let mut arrows = Vec::with_capacity(m * order);
    for gi in 0..order {
        let label = g.format(&g.element(gi));
        for x in 0..n {
            vertices.push(if trivial { q.vertex_name(x).to_string() } else { format!("{}.{label}", q.vertex_name(x)) });
        }
    }
    for gi in 0..order {
        let label = g.format(&g.element(gi));
        for (a, arr) in q.arrows().iter().enumerate() {
            let shifted = g.index(&g.add(&g.element(gi), w.weight(a)));
            arrows.push(Arrow {
                name: if trivial { arr.name.clone() } else { format!("{}.{label}", arr.name) },
                source: gi * n + arr.source,
                target: shifted * n + arr.target,
            });
        }
    }
    let vertex_fiber = (0..n * order).map(|v| v % n).collect();
    let vertex_sheet = (0..n * order).map(|v| v / n).collect();
    let arrow_fiber = (0..m * order).map(|a| a % m).collect();
    let arrow_sheet = (0..m * order).map(|a| a / m).collect();
    assemble(base, g.clone(), w.clone(), vertices, arrows, vertex_fiber, vertex_sheet, arrow_fiber, arrow_sheet)
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    base: &Algebra,
    group: FiniteGroup,
    grading: Grading,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_fiber: Vec<usize>,
    vertex_sheet: Vec<usize>,
    arrow_fiber: Vec<usize>,
    arrow_sheet: Vec<usize>,
) -> Result<CoveringData> {
    let q = base.quiver();
    let order = group.order();
    let mut vertex_at = vec![vec![usize::MAX; order]; q.num_vertices()];
    for v in 0..vertices.len() {
        vertex_at[vertex_fiber[v]][vertex_sheet[v]] = v;
    }
    let mut arrow_at = vec![vec![usize::MAX; order]; q.num_arrows()];
    for a in 0..arrows.len() {
        arrow_at[arrow_fiber[a]][arrow_sheet[a]] = a;
    }
    let cq = Quiver::new(vertices, arrows)?;
    // lift each relation from every vertex over its source; lifts that stop
    // being parallel are dropped
    let mut relations = Vec::new();
    for r in base.relations() {
        for &start in &vertex_at[r.source()] {
            let lifted: Option<Vec<(Scalar, Path)>> = r
                .terms()
                .iter()
                .map(|(c, p)| lift_path(&cq, &arrow_fiber, p, start).map(|l| (c.clone(), l)))
                .collect();
            if let Some(terms) = lifted {
                if let Ok(rel) = Relation::new(terms) {
                    relations.push(rel);
                }
            }
        }
    }
    let cover = Arc::new(AlgebraPresentation::build(base.field(), cq, relations, Some(base.length_cap()))?);
    Ok(CoveringData {
        base: base.clone(),
        group,
        grading,
        cover,
        vertex_fiber,
        vertex_sheet,
        arrow_fiber,
        arrow_sheet,
        vertex_at,
        arrow_at,
    })
}

/// The lift of a base path starting at a cover vertex, following the unique
/// arrow over each base arrow.
fn lift_path(cq: &Quiver, arrow_fiber: &[usize], p: &Path, start: usize) -> Option<Path> {
    if p.is_trivial() {
        return Some(cq.trivial(start));
    }
    let mut at = start;
    let mut lifted = Vec::with_capacity(p.len());
    for &a in p.arrows().iter().rev() {
        let alpha = cq.arrows_from(at).find(|&al| arrow_fiber[al] == a)?;
        lifted.push(alpha);
        at = cq.arrow(alpha).target;
    }
    lifted.reverse();
    cq.path(lifted).ok()
}

impl CoveringData {
    /// The identity functor as a covering with the trivial group.
    pub fn identity(base: &Algebra) -> Result<CoveringData> {
        let g = FiniteGroup::trivial();
        build_covering(base, &Grading::zero(base, &g), &g)
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn cover(&self) -> &Algebra {
        &self.cover
    }

    /// The cover vertex over `x` in sheet `g` (a group element index).
    pub fn vertex(&self, x: usize, g: usize) -> usize {
        self.vertex_at[x][g]
    }

    pub fn arrow(&self, a: usize, g: usize) -> usize {
        self.arrow_at[a][g]
    }

    pub fn vertex_fiber(&self, v: usize) -> usize {
        self.vertex_fiber[v]
    }

    pub fn vertex_sheet(&self, v: usize) -> usize {
        self.vertex_sheet[v]
    }

    pub fn arrow_fiber(&self, a: usize) -> usize {
        self.arrow_fiber[a]
    }

    pub fn arrow_sheet(&self, a: usize) -> usize {
        self.arrow_sheet[a]
    }

    /// Cover vertices over `x` in sheet order.
    pub fn fiber(&self, x: usize) -> &[usize] {
        &self.vertex_at[x]
    }

    /// `g · v`, with `g` a group element index.
    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.vertex_at[self.vertex_fiber[v]][self.group.add_index(g, self.vertex_sheet[v])]
    }

    pub fn act_arrow(&self, g: usize, a: usize) -> usize {
        self.arrow_at[self.arrow_fiber[a]][self.group.add_index(g, self.arrow_sheet[a])]
    }

    /// `F` on a path of the cover.
    pub fn project_path(&self, p: &Path) -> Path {
        if p.is_trivial() {
            return Path::trivial(self.vertex_fiber[p.source()]);
        }
        let arrows = p.arrows().iter().map(|&a| self.arrow_fiber[a]).collect();
        self.base.quiver().path(arrows).expect("fiber maps respect incidence")
    }

    /// The lift of a base path starting at cover vertex `start`.
    pub fn lift(&self, p: &Path, start: usize) -> Option<Path> {
        lift_path(self.cover.quiver(), &self.arrow_fiber, p, start)
    }

    /// The same claimed covering data with one arrow of the cover moved to a
    /// new target. Used to check that verification catches broken coverings.
    pub fn with_arrow_retargeted(&self, arrow: usize, target: usize) -> Result<CoveringData> {
        let cq = self.cover.quiver();
        let mut arrows = cq.arrows().to_vec();
        if arrow >= arrows.len() || target >= cq.num_vertices() {
            return Err(Error::MalformedQuiver("arrow or vertex out of range".into()));
        }
        arrows[arrow].target = target;
        assemble(
            &self.base,
            self.group.clone(),
            self.grading.clone(),
            cq.vertices().to_vec(),
            arrows,
            self.vertex_fiber.clone(),
            self.vertex_sheet.clone(),
            self.arrow_fiber.clone(),
            self.arrow_sheet.clone(),
        )
    }

    /// `F` applied to a combination over the cover basis, in the base basis.
    fn project_combo(&self, combo: &BasisCombo) -> BasisCombo {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (i, c) in combo {
            let p = self.project_path(&self.cover.basis()[*i]);
            for (j, x) in self.base.reduce_path(&p) {
                acc.entry(j).or_insert_with(|| self.base.field().zero()).add_mul_assign(c, &x);
            }
        }
        let mut out: BasisCombo = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

/// A failed fiber-sum bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairFailure {
    pub source: String,
    pub target: String,
    /// `"target fiber"` or `"source fiber"`.
    pub side: String,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub checked_pairs: usize,
    pub assertions: Vec<Assertion>,
    pub failures: Vec<PairFailure>,
}

impl CoveringReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// Checks the covering axioms: `F` is a functor, `G` acts freely compatibly
/// with `F`, fibers are orbits, and for all cover vertices `x, y` both
/// `⊕_{y'∈Fy} C(x, y') → A(Fx, Fy)` and `⊕_{x'∈Fx} C(x', y) → A(Fx, Fy)` are
/// bijective.
pub fn verify_covering_functor(cd: &CoveringData) -> CoveringReport {
    let base = &cd.base;
    let cover = &cd.cover;
    let (bq, cq) = (base.quiver(), cover.quiver());
    let order = cd.group.order();
    let nv = cq.num_vertices();
    let mut assertions = Vec::new();

    let bad_arrows: Vec<String> = (0..cq.num_arrows())
        .filter(|&al| {
            let (arr, a) = (cq.arrow(al), bq.arrow(cd.arrow_fiber[al]));
            cd.vertex_fiber[arr.source] != a.source || cd.vertex_fiber[arr.target] != a.target
        })
        .map(|al| cq.arrow(al).name.clone())
        .collect();
    assertions.push(Assertion::new("F respects incidence", bad_arrows.is_empty(), bad_arrows.join(", ")));

    let counts_ok = nv == bq.num_vertices() * order
        && cq.num_arrows() == bq.num_arrows() * order
        && cd.vertex_at.iter().flatten().all(|&v| v < nv)
        && cd.arrow_at.iter().flatten().all(|&a| a < cq.num_arrows());
    assertions.push(Assertion::new(
        "fibers are orbits",
        counts_ok,
        format!("{nv} vertices and {} arrows over a group of order {order}", cq.num_arrows()),
    ));
    if !counts_ok {
        return CoveringReport {
            checked_pairs: 0,
            assertions,
            failures: Vec::new(),
        };
    }

    let mut not_free = Vec::new();
    let mut incompatible = Vec::new();
    for g in 1..order {
        for v in 0..nv {
            if cd.act_vertex(g, v) == v {
                not_free.push(cq.vertex_name(v).to_string());
            }
        }
        for al in 0..cq.num_arrows() {
            let (arr, moved) = (cq.arrow(al), cq.arrow(cd.act_arrow(g, al)));
            if moved.source != cd.act_vertex(g, arr.source) || moved.target != cd.act_vertex(g, arr.target) {
                incompatible.push(format!("{} under {}", arr.name, cd.group.format(&cd.group.element(g))));
            }
        }
    }
    assertions.push(Assertion::new("action is free", not_free.is_empty(), not_free.join(", ")));
    assertions.push(Assertion::new("action commutes with incidence", incompatible.is_empty(), incompatible.join(", ")));

    let mut bad_relations = Vec::new();
    for r in cover.relations() {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (c, p) in r.terms() {
            for (j, x) in base.reduce_path(&cd.project_path(p)) {
                acc.entry(j).or_insert_with(|| base.field().zero()).add_mul_assign(c, &x);
            }
        }
        if acc.values().any(|c| !c.is_zero()) {
            bad_relations.push(cq.path_name(&r.terms()[0].1));
        }
    }
    let cb = cover.basis();
    let mut bad_products = 0;
    for i in 0..cb.len() {
        for j in 0..cb.len() {
            if cb[j].target() != cb[i].source() {
                continue;
            }
            let left = cd.project_combo(cover.mul_basis(i, j));
            let p = cd.project_path(&cb[i]).compose(&cd.project_path(&cb[j])).expect("composable");
            if left != base.reduce_path(&p) {
                bad_products += 1;
            }
        }
    }
    assertions.push(Assertion::new(
        "F is a functor",
        bad_relations.is_empty() && bad_products == 0,
        format!("relations not killed: [{}]; {bad_products} products disagree", bad_relations.join(", ")),
    ));

    let mut failures = Vec::new();
    let mut checked = 0;
    for x in 0..nv {
        for y in 0..nv {
            checked += 1;
            let (fx, fy) = (cd.vertex_fiber[x], cd.vertex_fiber[y]);
            let codomain = base.basis_between(fx, fy);
            let by_target: Vec<usize> = cd.vertex_at[fy].iter().flat_map(|&y2| cover.basis_between(x, y2)).collect();
            let by_source: Vec<usize> = cd.vertex_at[fx].iter().flat_map(|&x2| cover.basis_between(x2, y)).collect();
            for (side, domain) in [("target fiber", by_target), ("source fiber", by_source)] {
                let rank = fiber_rank(cd, &domain, &codomain);
                if domain.len() != codomain.len() || rank != codomain.len() {
                    failures.push(PairFailure {
                        source: cq.vertex_name(x).to_string(),
                        target: cq.vertex_name(y).to_string(),
                        side: side.to_string(),
                        domain_dim: domain.len(),
                        codomain_dim: codomain.len(),
                        rank,
                    });
                }
            }
        }
    }
    let detail = failures
        .iter()
        .take(8)
        .map(|f| format!("({}, {}) {}: {} -> {} of rank {}", f.source, f.target, f.side, f.domain_dim, f.codomain_dim, f.rank))
        .collect::<Vec<_>>()
        .join("; ");
    assertions.push(Assertion::new("fiber sums are bijective", failures.is_empty(), detail));
    let quotient = assertions.iter().all(|a| a.passed);
    assertions.push(Assertion::new(
        "quotient by G is the base",
        quotient,
        format!("{} orbits of vertices, {} of arrows", bq.num_vertices(), bq.num_arrows()),
    ));
    CoveringReport {
        checked_pairs: checked,
        assertions,
        failures,
    }
}

fn fiber_rank(cd: &CoveringData, domain: &[usize], codomain: &[usize]) -> usize {
    if domain.is_empty() || codomain.is_empty() {
        return 0;
    }
    let field = cd.base.field();
    let pos: HashMap<usize, usize> = codomain.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let cols: Vec<Vec<Scalar>> = domain
        .iter()
        .map(|&i| {
            let mut col = vec![field.zero(); codomain.len()];
            for (j, c) in cd.project_combo(&vec![(i, field.one())]) {
                if let Some(&k) = pos.get(&j) {
                    col[k] = c;
                }
            }
            col
        })
        .collect();
    Mat::from_columns(field, codomain.len(), &cols).rank()
}

/// Connected components of the vertex graph with an edge wherever some
/// nonzero path joins two vertices.
pub fn components(p: &AlgebraPresentation) -> Vec<Vec<usize>> {
    let n = p.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut x = x;
        while parent[x] != r {
            let next = parent[x];
            parent[x] = r;
            x = next;
        }
        r
    }
    for q in p.basis() {
        let (a, b) = (find(&mut parent, q.source()), find(&mut parent, q.target()));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut root_of: HashMap<usize, usize> = HashMap::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        let k = *root_of.entry(r).or_insert_with(|| {
            comps.push(Vec::new());
            comps.len() - 1
        });
        comps[k].push(v);
    }
    comps
}

pub fn is_connected_category(p: &AlgebraPresentation) -> bool {
    components(p).len() <= 1
}

#[cfg(test)]
mod tests;
