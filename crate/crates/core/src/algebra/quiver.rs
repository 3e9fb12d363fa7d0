use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with named vertices and arrows. Vertices and arrows are
/// addressed by their position in the declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if seen.insert(v.as_str(), i).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        let mut seen_arrows = HashMap::new();
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::MalformedQuiver(format!(
                    "arrow {:?} has an undeclared endpoint",
                    a.name
                )));
            }
            if seen_arrows.insert(a.name.as_str(), ()).is_some() {
                return Err(Error::MalformedQuiver(format!("duplicate arrow {:?}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from vertex names and `(arrow, source, target)` name triples.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| {
            vs.iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::MalformedQuiver(format!("unknown vertex {name:?}")))
        };
        let mut arr = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            arr.push(Arrow {
                name: name.to_string(),
                source: find(s)?,
                target: find(t)?,
            });
        }
        Quiver::new(vs, arr)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_from(v).next().is_none()
    }

    /// Same vertices and arrow names, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Validates an arrow sequence given target-to-source (composition order).
    pub fn path(&self, arrows: Vec<usize>) -> Result<Path> {
        if arrows.is_empty() {
            return Err(Error::ForeignPath("empty arrow sequence; use a trivial path".into()));
        }
        for &a in &arrows {
            if a >= self.arrows.len() {
                return Err(Error::ForeignPath(format!("arrow index {a}")));
            }
        }
        for w in arrows.windows(2) {
            // w[0] is applied after w[1]
            if self.arrows[w[1]].target != self.arrows[w[0]].source {
                return Err(Error::ForeignPath(format!(
                    "{} then {} do not compose",
                    self.arrows[w[1]].name, self.arrows[w[0]].name
                )));
            }
        }
        Ok(Path {
            source: self.arrows[*arrows.last().unwrap()].source,
            target: self.arrows[arrows[0]].target,
            arrows,
        })
    }

    /// Path from arrow names, listed in composition order (last arrow first).
    pub fn path_by_names(&self, names: &[&str]) -> Result<Path> {
        let idx = names
            .iter()
            .map(|n| {
                self.arrow_index(n)
                    .ok_or_else(|| Error::ForeignPath(format!("unknown arrow {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.path(idx)
    }

    pub fn trivial(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path {
            source: arr.source,
            target: arr.target,
            arrows: vec![a],
        }
    }

    /// Checks that a path only uses this quiver's arrows and vertices.
    pub fn contains(&self, p: &Path) -> bool {
        if p.arrows.is_empty() {
            return p.source == p.target && p.source < self.vertices.len();
        }
        match self.path(p.arrows.clone()) {
            Ok(q) => q.source == p.source && q.target == p.target,
            Err(_) => false,
        }
    }

    /// All paths of exactly the given length, in ascending path order.
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut paths: Vec<Path> = (0..self.vertices.len()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &paths {
                for a in self.arrows_from(p.target) {
                    next.push(self.arrow_path(a).compose(p).unwrap());
                }
            }
            paths = next;
        }
        paths.sort();
        paths
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e{}", self.vertices[p.source])
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrows[a].name.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A path in a quiver. Arrows are recorded target-to-source, so the
/// composite `d∘a` is stored as `[d, a]` and concatenation of arrow lists is
/// composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self ∘ first`: follow `first`, then `self`.
    pub fn compose(&self, first: &Path) -> Option<Path> {
        if first.target != self.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&first.arrows);
        Some(Path {
            source: first.source,
            target: self.target,
            arrows,
        })
    }

    /// The same path read in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

}

/// Length first, then lexicographic on arrow indices; trivial paths by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let parts: Vec<String> = self.arrows.iter().map(|a| format!("a{a}")).collect();
            write!(f, "{}", parts.join("*"))
        }
    }
}
