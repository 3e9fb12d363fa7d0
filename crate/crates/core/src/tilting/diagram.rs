use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::repmod::{is_isomorphic, Representation};
use crate::tilting::session::Session;
use crate::tilting::{ExchangeSequence, TiltingCandidate, TiltingVerdict};

pub const DEFAULT_VERTEX_CAP: usize = 10_000;

/// Arrow `source → target` of the Hasse diagram, labelled by the exchange
/// sequence `0 → X → M → Y → 0` with `X` a summand of the source and `Y` of
/// the target.
#[derive(Clone, Debug)]
pub struct ExchangeEdge {
    pub source: usize,
    pub target: usize,
    /// Position of `X` in the source vertex.
    pub index: usize,
    pub x: usize,
    pub y: usize,
    pub sequence: ExchangeSequence,
}

/// The Hasse diagram of basic tilting modules reachable from a start vertex.
/// Vertices are sorted lists of module ids into `modules`.
#[derive(Clone, Debug)]
pub struct TiltingDiagram {
    algebra: Algebra,
    modules: Vec<Representation>,
    vertices: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    edges: Vec<ExchangeEdge>,
    a: Option<usize>,
    da: Option<usize>,
    complete: bool,
}

/// Induced subgraph: vertex indices and edge indices of the parent diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubDiagram {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexReport {
    pub index: usize,
    pub summands: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EdgeReport {
    pub source: usize,
    pub target: usize,
    pub index: usize,
    pub x: String,
    pub y: String,
    pub middle: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub vertices: usize,
    pub edges: usize,
    pub sources: Vec<usize>,
    pub sinks: Vec<usize>,
    pub regular: Option<usize>,
    pub dual_regular: Option<usize>,
    pub vertex_list: Vec<VertexReport>,
    pub edge_list: Vec<EdgeReport>,
}

impl TiltingDiagram {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// False when a truncated exploration stopped at its vertex cap.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn module(&self, id: usize) -> &Representation {
        &self.modules[id]
    }

    pub fn modules(&self) -> &[Representation] {
        &self.modules
    }

    /// Sorted module ids of vertex `v`.
    pub fn vertex(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }

    pub fn candidate(&self, v: usize) -> TiltingCandidate {
        TiltingCandidate::new(self.vertices[v].iter().map(|&i| self.modules[i].clone()).collect())
    }

    pub fn vertex_of_ids(&self, ids: &[usize]) -> Option<usize> {
        let mut key = ids.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// Vertex whose summands are isomorphic to those of `t`.
    pub fn find(&self, t: &TiltingCandidate) -> Option<usize> {
        let ids = t
            .summands()
            .iter()
            .map(|s| {
                (0..self.modules.len())
                    .filter(|&i| self.modules[i].dims() == s.dims())
                    .find(|&i| is_isomorphic(&self.modules[i], s, 0))
            })
            .collect::<Option<Vec<usize>>>()?;
        self.vertex_of_ids(&ids)
    }

    pub fn edges(&self) -> &[ExchangeEdge] {
        &self.edges
    }

    pub fn regular_vertex(&self) -> Option<usize> {
        self.a
    }

    pub fn dual_regular_vertex(&self) -> Option<usize> {
        self.da
    }

    pub fn successors(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.source == v).map(|e| e.target).collect()
    }

    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.target == v).map(|e| e.source).collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.predecessors(v).is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.num_vertices()).filter(|&v| self.successors(v).is_empty()).collect()
    }

    fn reach(&self, from: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.num_vertices()];
        seen[from] = true;
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            let next = if forward { self.successors(v) } else { self.predecessors(v) };
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.num_vertices() {
            Ok(())
        } else {
            Err(Error::VertexNotFound)
        }
    }

    /// Whether there is an oriented path from `t1` to `t2`.
    pub fn is_predecessor(&self, t1: usize, t2: usize) -> Result<bool> {
        self.check(t1)?;
        self.check(t2)?;
        Ok(self.reach(t1, true)[t2])
    }

    /// Vertices on oriented paths from `t1` to `t2`, or just `{t1, t2}` when
    /// there is no such path.
    pub fn convex_hull(&self, t1: usize, t2: usize) -> Result<SubDiagram> {
        self.check(t1)?;
        self.check(t2)?;
        let fwd = self.reach(t1, true);
        let bwd = self.reach(t2, false);
        let mut vertices: Vec<usize> = (0..self.num_vertices()).filter(|&v| fwd[v] && bwd[v]).collect();
        if vertices.is_empty() {
            vertices = if t1 == t2 { vec![t1] } else { vec![t1.min(t2), t1.max(t2)] };
        }
        Ok(self.induced(&vertices))
    }

    pub fn induced(&self, vertices: &[usize]) -> SubDiagram {
        let set: HashSet<usize> = vertices.iter().copied().collect();
        let edges = (0..self.edges.len())
            .filter(|&k| set.contains(&self.edges[k].source) && set.contains(&self.edges[k].target))
            .collect();
        SubDiagram {
            vertices: vertices.to_vec(),
            edges,
        }
    }

    pub fn vertex_label(&self, v: usize) -> String {
        self.vertices[v]
            .iter()
            .map(|&i| self.modules[i].dim_vector_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Longest-path distance from the unique source, if there is one.
    pub fn layers(&self) -> Option<Vec<usize>> {
        let src = self.sources();
        if src.len() != 1 {
            return None;
        }
        let n = self.num_vertices();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.predecessors(v).len()).collect();
        let mut depth = vec![0; n];
        let mut queue: VecDeque<usize> = VecDeque::from(vec![src[0]]);
        let mut seen = 0;
        while let Some(v) = queue.pop_front() {
            seen += 1;
            for w in self.successors(v) {
                depth[w] = depth[w].max(depth[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (seen == n).then_some(depth)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tilting {\n");
        for v in 0..self.num_vertices() {
            let mut attrs = format!("label=\"{}\"", self.vertex_label(v));
            if Some(v) == self.a {
                attrs.push_str(", shape=box");
            } else if Some(v) == self.da {
                attrs.push_str(", shape=doublecircle");
            }
            let _ = writeln!(out, "  v{v} [{attrs}];");
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.source, e.target, e.index);
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> DiagramReport {
        DiagramReport {
            vertices: self.num_vertices(),
            edges: self.num_edges(),
            sources: self.sources(),
            sinks: self.sinks(),
            regular: self.a,
            dual_regular: self.da,
            vertex_list: (0..self.num_vertices())
                .map(|v| VertexReport {
                    index: v,
                    summands: self.vertices[v].iter().map(|&i| self.modules[i].dim_vector_string()).collect(),
                })
                .collect(),
            edge_list: self
                .edges
                .iter()
                .map(|e| EdgeReport {
                    source: e.source,
                    target: e.target,
                    index: e.index,
                    x: self.modules[e.x].dim_vector_string(),
                    y: self.modules[e.y].dim_vector_string(),
                    middle: e.sequence.middle().dim_vector_string(),
                })
                .collect(),
        }
    }
}

/// How a diagram is grown from its start vertex.
#[derive(Clone, Debug)]
pub(crate) struct Exploration {
    pub vertex_cap: usize,
    /// Follow right mutations as well as left ones.
    pub both_directions: bool,
    /// Keep only vertices `X` with `lower ≤ X`.
    pub lower: Option<Vec<usize>>,
    /// Stop quietly at the cap instead of failing.
    pub truncate: bool,
}

impl Session {
    /// Closure of `start` under left and right mutation.
    pub fn hasse_diagram(&mut self, start: &[usize], vertex_cap: usize) -> Result<TiltingDiagram> {
        self.explore(
            start,
            &Exploration {
                vertex_cap,
                both_directions: true,
                lower: None,
                truncate: false,
            },
        )
    }

    /// Vertices below `top` and above `bottom` reachable from `top` by left
    /// mutations; contains every oriented path from `top` to `bottom`.
    pub fn interval_diagram(&mut self, top: &[usize], bottom: &[usize], vertex_cap: usize) -> Result<TiltingDiagram> {
        self.explore(
            top,
            &Exploration {
                vertex_cap,
                both_directions: false,
                lower: Some(bottom.to_vec()),
                truncate: false,
            },
        )
    }

    /// Breadth-first part of the diagram with at most `vertex_cap` vertices.
    pub fn truncated_diagram(&mut self, start: &[usize], vertex_cap: usize) -> Result<TiltingDiagram> {
        self.explore(
            start,
            &Exploration {
                vertex_cap,
                both_directions: true,
                lower: None,
                truncate: true,
            },
        )
    }

    pub(crate) fn explore(&mut self, start: &[usize], how: &Exploration) -> Result<TiltingDiagram> {
        match self.tilting_verdict(start) {
            TiltingVerdict::Yes => {}
            TiltingVerdict::ExceedsCap(c) => return Err(Error::ExceedsCap(c)),
            TiltingVerdict::No(r) => return Err(Error::MutationRejected(format!("start is not tilting: {r}"))),
        }
        let vertex_cap = how.vertex_cap;
        let mut vertices: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut edges: Vec<ExchangeEdge> = Vec::new();
        let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
        let mut queue = VecDeque::new();
        let mut complete = true;

        // Ok(None): the cap was hit in truncating mode
        let mut add_vertex = |ids: &[usize], vertices: &mut Vec<Vec<usize>>, queue: &mut VecDeque<usize>| -> Result<Option<usize>> {
            let mut key = ids.to_vec();
            key.sort_unstable();
            if let Some(&v) = index.get(&key) {
                return Ok(Some(v));
            }
            if vertices.len() >= vertex_cap {
                if how.truncate {
                    return Ok(None);
                }
                return Err(Error::VertexCapExceeded(vertex_cap));
            }
            vertices.push(key.clone());
            index.insert(key, vertices.len() - 1);
            queue.push_back(vertices.len() - 1);
            Ok(Some(vertices.len() - 1))
        };

        add_vertex(start, &mut vertices, &mut queue)?;
        while let Some(v) = queue.pop_front() {
            let ids = vertices[v].clone();
            for i in 0..ids.len() {
                if let Some(m) = self.mutate_left(&ids, i)? {
                    let keep = match &how.lower {
                        Some(low) => self.leq(low, &m.ids)?,
                        None => true,
                    };
                    if keep {
                        match add_vertex(&m.ids, &mut vertices, &mut queue)? {
                            None => complete = false,
                            Some(w) => {
                                if seen_edges.insert((v, w)) {
                                    edges.push(ExchangeEdge {
                                        source: v,
                                        target: w,
                                        index: i,
                                        x: m.removed,
                                        y: m.added,
                                        sequence: m.sequence,
                                    });
                                }
                            }
                        }
                    }
                }
                if !how.both_directions {
                    continue;
                }
                if let Some(m) = self.mutate_right(&ids, i)? {
                    match add_vertex(&m.ids, &mut vertices, &mut queue)? {
                        None => complete = false,
                        Some(w) => {
                            if seen_edges.insert((w, v)) {
                                let mut key = m.ids.clone();
                                key.sort_unstable();
                                let pos = key.iter().position(|&k| k == m.added).expect("new summand present");
                                edges.push(ExchangeEdge {
                                    source: w,
                                    target: v,
                                    index: pos,
                                    x: m.added,
                                    y: m.removed,
                                    sequence: m.sequence,
                                });
                            }
                        }
                    }
                }
            }
        }
        let a = self.regular_ids()?;
        let da = self.dual_regular_ids()?;
        let lookup = |ids: &[usize]| {
            let mut key = ids.to_vec();
            key.sort_unstable();
            vertices.iter().position(|v| *v == key)
        };
        let (a, da) = (lookup(&a), lookup(&da));
        let index = vertices.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        Ok(TiltingDiagram {
            algebra: self.algebra().clone(),
            modules: self.modules().to_vec(),
            vertices,
            index,
            edges,
            a,
            da,
            complete,
        })
    }
}
