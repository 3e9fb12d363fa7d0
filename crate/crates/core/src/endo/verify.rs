use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::repmod::{has_section, is_isomorphic, split, Representation};
use crate::tilting::{interval_diagram, SubDiagram, TiltingCandidate, TiltingDiagram};

use super::{endo_presentation, theta, transport, transport_mor, EndoPresentation};

#[derive(Clone, Copy, Debug, Default)]
pub struct Caps {
    pub vertices: Option<usize>,
    pub pd: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Assertion {
        Assertion {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A named list of assertions.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub checked: usize,
    pub assertions: Vec<Assertion>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm45Report {
    pub hull_a: usize,
    pub hull_b: usize,
    pub diagram_a: usize,
    pub diagram_b: usize,
    /// Pairs of vertex labels `X ↦ X_T`.
    pub vertex_map: Vec<(String, String)>,
    pub assertions: Vec<Assertion>,
}

impl Thm45Report {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    /// `AssertionFailed` naming the first failed assertion.
    pub fn into_result(self) -> Result<Thm45Report> {
        match self.assertions.iter().find(|a| !a.passed) {
            Some(a) => Err(Error::AssertionFailed(format!("{}: {}", a.name, a.detail))),
            None => Ok(self),
        }
    }
}

/// Transports the summands of `X` and splits the results.
pub(crate) fn transport_candidate(x: &TiltingCandidate, e: &EndoPresentation) -> Result<TiltingCandidate> {
    let mut out = Vec::new();
    for s in x.summands() {
        let xt = transport(s, e)?;
        out.extend(split(xt.module())?.into_iter().map(|p| p.module));
    }
    Ok(TiltingCandidate::new(out))
}

struct Setup {
    diagram_a: TiltingDiagram,
    a: usize,
    t: usize,
    hull_a: SubDiagram,
    endo: EndoPresentation,
}

fn setup(algebra: &Algebra, t: &TiltingCandidate, caps: Caps) -> Result<std::result::Result<Setup, Assertion>> {
    let diagram_a = interval_diagram(algebra, &TiltingCandidate::regular(algebra), t, caps.vertices, caps.pd)?;
    let a = diagram_a.regular_vertex().expect("start vertex is the regular module");
    let Some(tv) = diagram_a.find(t) else {
        return Ok(Err(Assertion::new("T in K_A", false, "T is not a vertex of the diagram reached from A")));
    };
    let hull_a = diagram_a.convex_hull(a, tv)?;
    let endo = endo_presentation(t)?;
    Ok(Ok(Setup {
        diagram_a,
        a,
        t: tv,
        hull_a,
        endo,
    }))
}

/// The part of `K_B` between `B` and `A_T`.
fn b_side(s: &Setup, caps: Caps) -> Result<TiltingDiagram> {
    let b_alg = s.endo.algebra();
    let a_t = transport_candidate(&s.diagram_a.candidate(s.a), &s.endo)?;
    interval_diagram(b_alg, &TiltingCandidate::regular(b_alg), &a_t, caps.vertices, caps.pd)
}

/// Checks that `X ↦ X_T` maps the convex hull of `{A, T}` in `K_A`
/// isomorphically onto the opposite of the convex hull of `{B, T_T}` in `K_B`.
pub fn verify_thm45(algebra: &Algebra, t: &TiltingCandidate, caps: Caps) -> Result<Thm45Report> {
    let s = match setup(algebra, t, caps)? {
        Ok(s) => s,
        Err(fail) => {
            return Ok(Thm45Report {
                hull_a: 0,
                hull_b: 0,
                diagram_a: 0,
                diagram_b: 0,
                vertex_map: Vec::new(),
                assertions: vec![fail],
            })
        }
    };
    let b_alg = s.endo.algebra().clone();
    let diagram_b = b_side(&s, caps)?;
    let b = diagram_b.regular_vertex().expect("start vertex is the regular module");
    let mut assertions = Vec::new();

    let t_t = transport(&t.module(algebra), &s.endo)?;
    assertions.push(Assertion::new(
        "T_T = B",
        is_isomorphic(t_t.module(), &Representation::regular(&b_alg), 0),
        "Hom(T, T) against the regular B-module",
    ));

    let image = |v: usize| -> Result<Option<usize>> {
        Ok(diagram_b.find(&transport_candidate(&s.diagram_a.candidate(v), &s.endo)?))
    };
    let a_img = image(s.a)?;
    let Some(a_img) = a_img else {
        assertions.push(Assertion::new("A_T in K_B", false, "Hom(A, T) is not a vertex of K_B"));
        return Ok(Thm45Report {
            hull_a: s.hull_a.vertices.len(),
            hull_b: 0,
            diagram_a: s.diagram_a.num_vertices(),
            diagram_b: diagram_b.num_vertices(),
            vertex_map: Vec::new(),
            assertions,
        });
    };
    let hull_b = diagram_b.convex_hull(b, a_img)?;

    let mut map = Vec::new();
    let mut vertex_map = Vec::new();
    for &v in &s.hull_a.vertices {
        let w = image(v)?;
        vertex_map.push((
            s.diagram_a.vertex_label(v),
            w.map(|w| diagram_b.vertex_label(w)).unwrap_or_else(|| "?".into()),
        ));
        map.push((v, w));
    }
    let missing: Vec<String> = map
        .iter()
        .filter(|(_, w)| w.is_none())
        .map(|(v, _)| s.diagram_a.vertex_label(*v))
        .collect();
    assertions.push(Assertion::new("images are vertices of K_B", missing.is_empty(), missing.join(", ")));
    let outside: Vec<String> = map
        .iter()
        .filter(|(_, w)| w.is_some_and(|w| !hull_b.vertices.contains(&w)))
        .map(|(v, _)| s.diagram_a.vertex_label(*v))
        .collect();
    assertions.push(Assertion::new("images lie in the hull of {B, A_T}", outside.is_empty(), outside.join(", ")));
    let mut imgs: Vec<usize> = map.iter().filter_map(|(_, w)| *w).collect();
    imgs.sort_unstable();
    imgs.dedup();
    assertions.push(Assertion::new(
        "bijection on vertices",
        imgs.len() == map.len() && imgs.len() == hull_b.vertices.len(),
        format!("{} hull vertices over A, {} distinct images, {} hull vertices over B", map.len(), imgs.len(), hull_b.vertices.len()),
    ));
    let lookup = |v: usize| map.iter().find(|(x, _)| *x == v).and_then(|(_, w)| *w);
    let mut bad_edges = Vec::new();
    for &k in &s.hull_a.edges {
        let e = &s.diagram_a.edges()[k];
        let ok = match (lookup(e.source), lookup(e.target)) {
            (Some(x), Some(y)) => diagram_b.edges().iter().any(|f| f.source == y && f.target == x),
            _ => false,
        };
        if !ok {
            bad_edges.push(format!("{} -> {}", s.diagram_a.vertex_label(e.source), s.diagram_a.vertex_label(e.target)));
        }
    }
    assertions.push(Assertion::new("arrows are reversed", bad_edges.is_empty(), bad_edges.join(", ")));
    assertions.push(Assertion::new(
        "same number of arrows",
        s.hull_a.edges.len() == hull_b.edges.len(),
        format!("{} against {}", s.hull_a.edges.len(), hull_b.edges.len()),
    ));
    assertions.push(Assertion::new("A maps to A_T", lookup(s.a) == Some(a_img), ""));
    assertions.push(Assertion::new("T maps to B", lookup(s.t) == Some(b), ""));
    let unreachable: Vec<String> = imgs
        .iter()
        .filter(|&&w| !diagram_b.is_predecessor(b, w).unwrap_or(false))
        .map(|&w| diagram_b.vertex_label(w))
        .collect();
    assertions.push(Assertion::new("images reachable from B", unreachable.is_empty(), unreachable.join(", ")));
    Ok(Thm45Report {
        hull_a: s.hull_a.vertices.len(),
        hull_b: hull_b.vertices.len(),
        diagram_a: s.diagram_a.num_vertices(),
        diagram_b: diagram_b.num_vertices(),
        vertex_map,
        assertions,
    })
}

fn failed_setup(check: &str, a: Assertion) -> CheckReport {
    CheckReport {
        check: check.into(),
        checked: 0,
        assertions: vec![a],
    }
}

/// `θ_{X,Y}` is bijective for `X` among the simples and every module met in
/// `K_A`, and `Y` an indecomposable summand of a hull vertex.
pub fn lemma41_check(algebra: &Algebra, t: &TiltingCandidate, caps: Caps) -> Result<CheckReport> {
    let s = match setup(algebra, t, caps)? {
        Ok(s) => s,
        Err(a) => return Ok(failed_setup("lemma41", a)),
    };
    let mut xs: Vec<Representation> = s.diagram_a.modules().to_vec();
    for x in 0..algebra.num_vertices() {
        let sx = Representation::simple(algebra, x);
        if !xs.iter().any(|m| m.dims() == sx.dims() && is_isomorphic(m, &sx, 0)) {
            xs.push(sx);
        }
    }
    let mut ys: Vec<usize> = s.hull_a.vertices.iter().flat_map(|&v| s.diagram_a.vertex(v).to_vec()).collect();
    ys.sort_unstable();
    ys.dedup();
    let mut assertions = Vec::new();
    let mut checked = 0;
    for x in &xs {
        for &y in &ys {
            let th = theta(x, s.diagram_a.module(y), &s.endo)?;
            checked += 1;
            if !th.is_bijective() {
                assertions.push(Assertion::new(
                    "theta bijective",
                    false,
                    format!(
                        "X = {}, Y = {}: rank {} for dims {} -> {}",
                        x.dim_vector_string(),
                        s.diagram_a.module(y).dim_vector_string(),
                        th.rank,
                        th.source_dim,
                        th.target_dim
                    ),
                ));
            }
        }
    }
    if assertions.is_empty() {
        assertions.push(Assertion::new("theta bijective", true, format!("{checked} pairs")));
    }
    Ok(CheckReport {
        check: "lemma41".into(),
        checked,
        assertions,
    })
}

/// Every hull arrow `X → X'` with sequence `0 → M → X'' → N → 0` transports
/// to an exact non-split `0 → N_T → X''_T → M_T → 0` and an arrow
/// `X'_T → X_T` of `K_B`.
pub fn prop43_check(algebra: &Algebra, t: &TiltingCandidate, caps: Caps) -> Result<CheckReport> {
    let s = match setup(algebra, t, caps)? {
        Ok(s) => s,
        Err(a) => return Ok(failed_setup("prop43", a)),
    };
    let diagram_b = b_side(&s, caps)?;
    let mut assertions = Vec::new();
    let mut checked = 0;
    for &k in &s.hull_a.edges {
        let e = &s.diagram_a.edges()[k];
        let (u, v) = (&e.sequence.left, &e.sequence.right);
        let m_t = transport(u.source(), &s.endo)?;
        let mid_t = transport(u.target(), &s.endo)?;
        let n_t = transport(v.target(), &s.endo)?;
        let v_t = transport_mor(v, &n_t, &mid_t)?;
        let u_t = transport_mor(u, &mid_t, &m_t)?;
        let label = format!("{} -> {}", s.diagram_a.vertex_label(e.source), s.diagram_a.vertex_label(e.target));
        let zero = u_t.after(&v_t).is_zero();
        let exact = zero
            && v_t.is_injective()
            && u_t.is_surjective()
            && n_t.module().total_dim() + m_t.module().total_dim() == mid_t.module().total_dim();
        let non_split = exact && !has_section(&u_t)?;
        let src = diagram_b.find(&transport_candidate(&s.diagram_a.candidate(e.source), &s.endo)?);
        let tgt = diagram_b.find(&transport_candidate(&s.diagram_a.candidate(e.target), &s.endo)?);
        let arrow = match (src, tgt) {
            (Some(x), Some(y)) => diagram_b.edges().iter().any(|f| f.source == y && f.target == x),
            _ => false,
        };
        checked += 1;
        assertions.push(Assertion::new("transported sequence exact", exact, label.clone()));
        assertions.push(Assertion::new("transported sequence non-split", non_split, label.clone()));
        assertions.push(Assertion::new("reversed arrow in K_B", arrow, label));
    }
    Ok(CheckReport {
        check: "prop43".into(),
        checked,
        assertions,
    })
}

/// Every hull vertex `X` has `X_T` reachable from `B` in `K_B`.
pub fn prop46_check(algebra: &Algebra, t: &TiltingCandidate, caps: Caps) -> Result<CheckReport> {
    let s = match setup(algebra, t, caps)? {
        Ok(s) => s,
        Err(a) => return Ok(failed_setup("prop46", a)),
    };
    let diagram_b = b_side(&s, caps)?;
    let b = diagram_b.regular_vertex().expect("start vertex is the regular module");
    let mut assertions = Vec::new();
    for &v in &s.hull_a.vertices {
        let label = s.diagram_a.vertex_label(v);
        let w = diagram_b.find(&transport_candidate(&s.diagram_a.candidate(v), &s.endo)?);
        let ok = match w {
            Some(w) => diagram_b.is_predecessor(b, w)?,
            None => false,
        };
        assertions.push(Assertion::new("X_T reachable from B", ok, label));
    }
    Ok(CheckReport {
        check: "prop46".into(),
        checked: s.hull_a.vertices.len(),
        assertions,
    })
}
