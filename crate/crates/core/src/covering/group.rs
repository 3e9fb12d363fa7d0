use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Path};
use crate::error::{Error, Result};
use crate::format::GradingSpecFile;

/// Residues, one per cyclic factor.
pub type GroupElement = Vec<u64>;

/// `Z/m_1 × … × Z/m_k`. Elements are numbered in mixed radix with the last
/// factor varying fastest; index 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroup {
    orders: Vec<u64>,
}

impl FiniteGroup {
    pub fn new(orders: Vec<u64>) -> Result<FiniteGroup> {
        if orders.contains(&0) {
            return Err(Error::Parse("cyclic factors must have positive order".into()));
        }
        Ok(FiniteGroup { orders })
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup { orders: Vec::new() }
    }

    pub fn cyclic(m: u64) -> Result<FiniteGroup> {
        FiniteGroup::new(vec![m])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.orders.len()]
    }

    pub fn element(&self, mut index: usize) -> GroupElement {
        let mut g = vec![0; self.orders.len()];
        for k in (0..self.orders.len()).rev() {
            let m = self.orders[k] as usize;
            g[k] = (index % m) as u64;
            index /= m;
        }
        g
    }

    pub fn index(&self, g: &[u64]) -> usize {
        g.iter().zip(&self.orders).fold(0, |acc, (&r, &m)| acc * m as usize + r as usize)
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, g: &[u64], h: &[u64]) -> GroupElement {
        g.iter().zip(h).zip(&self.orders).map(|((a, b), m)| (a + b) % m).collect()
    }

    pub fn neg(&self, g: &[u64]) -> GroupElement {
        g.iter().zip(&self.orders).map(|(a, m)| (m - a % m) % m).collect()
    }

    pub fn sub(&self, g: &[u64], h: &[u64]) -> GroupElement {
        self.add(g, &self.neg(h))
    }

    pub fn add_index(&self, g: usize, h: usize) -> usize {
        self.index(&self.add(&self.element(g), &self.element(h)))
    }

    pub fn neg_index(&self, g: usize) -> usize {
        self.index(&self.neg(&self.element(g)))
    }

    /// Reduces integers modulo the factor orders.
    pub fn reduce(&self, residues: &[i64]) -> Result<GroupElement> {
        if residues.len() != self.orders.len() {
            return Err(Error::Parse(format!(
                "group element has {} components, the group has {} factors",
                residues.len(),
                self.orders.len()
            )));
        }
        Ok(residues.iter().zip(&self.orders).map(|(&r, &m)| r.rem_euclid(m as i64) as u64).collect())
    }

    /// Residues joined by commas; `0` for the trivial group.
    pub fn format(&self, g: &[u64]) -> String {
        if g.is_empty() {
            "0".into()
        } else {
            g.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        }
    }
}

/// A weight in the group for every arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    weights: Vec<GroupElement>,
}

impl Grading {
    pub fn new(group: &FiniteGroup, weights: Vec<GroupElement>) -> Result<Grading> {
        for w in &weights {
            if w.len() != group.orders().len() || w.iter().zip(group.orders()).any(|(r, m)| r >= m) {
                return Err(Error::Parse(format!("weight {w:?} is not an element of the group")));
            }
        }
        Ok(Grading { weights })
    }

    pub fn zero(algebra: &AlgebraPresentation, group: &FiniteGroup) -> Grading {
        Grading {
            weights: vec![group.identity(); algebra.quiver().num_arrows()],
        }
    }

    /// Reads a grading file against the arrows of `algebra`.
    pub fn from_spec(algebra: &AlgebraPresentation, spec: &GradingSpecFile) -> Result<(FiniteGroup, Grading)> {
        let group = FiniteGroup::new(spec.group.clone())?;
        let mut w = Grading::zero(algebra, &group);
        for (name, residues) in &spec.weights {
            let a = algebra
                .quiver()
                .arrow_index(name)
                .ok_or_else(|| Error::Parse(format!("grading names unknown arrow {name:?}")))?;
            w.weights[a] = group.reduce(residues)?;
        }
        Ok((group, w))
    }

    /// Grading file listing the nonzero weights.
    pub fn to_spec(&self, algebra: &AlgebraPresentation, group: &FiniteGroup) -> GradingSpecFile {
        GradingSpecFile {
            group: group.orders().to_vec(),
            weights: self
                .weights
                .iter()
                .enumerate()
                .filter(|(_, w)| w.iter().any(|&r| r != 0))
                .map(|(a, w)| (algebra.quiver().arrow(a).name.clone(), w.iter().map(|&r| r as i64).collect()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, a: usize) -> &GroupElement {
        &self.weights[a]
    }

    pub fn weights(&self) -> &[GroupElement] {
        &self.weights
    }

    /// Sum of the arrow weights along `p`.
    pub fn path_weight(&self, group: &FiniteGroup, p: &Path) -> GroupElement {
        p.arrows().iter().fold(group.identity(), |acc, &a| group.add(&acc, &self.weights[a]))
    }

    pub fn with_weight(&self, a: usize, g: GroupElement) -> Grading {
        let mut w = self.clone();
        w.weights[a] = g;
        w
    }
}
