use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Path};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};

#[derive(Debug)]
struct RepInner {
    algebra: Algebra,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

/// A finite-dimensional left module, given as a representation of the bound
/// quiver: one space per vertex and one `dim target × dim source` matrix per
/// arrow. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct Representation(Arc<RepInner>);

pub(crate) fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || a.same_as(b)
}

impl Representation {
    /// Validates matrix shapes and that every relation acts as zero.
    pub fn new(algebra: &Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Representation> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                q.num_vertices()
            )));
        }
        if maps.len() != q.num_arrows() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} arrows",
                maps.len(),
                q.num_arrows()
            )));
        }
        for (a, m) in maps.iter().enumerate() {
            let arr = q.arrow(a);
            if m.shape() != (dims[arr.target], dims[arr.source]) {
                return Err(Error::InvalidModule(format!(
                    "matrix for {} has shape {:?}, expected {:?}",
                    arr.name,
                    m.shape(),
                    (dims[arr.target], dims[arr.source])
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
        }
        let rep = Representation::new_unchecked(algebra, dims, maps);
        for r in algebra.relations() {
            let mut acc = Mat::zeros(algebra.field(), rep.dim(r.target()), rep.dim(r.source()));
            for (c, p) in r.terms() {
                acc = acc.add(&rep.path_action(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(Error::InvalidModule(format!(
                    "relation {} does not act as zero",
                    r.terms().iter().map(|(_, p)| q.path_name(p)).collect::<Vec<_>>().join(" + ")
                )));
            }
        }
        Ok(rep)
    }

    pub(crate) fn new_unchecked(algebra: &Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Representation {
        Representation(Arc::new(RepInner {
            algebra: algebra.clone(),
            dims,
            maps,
        }))
    }

    pub fn zero(algebra: &Algebra) -> Representation {
        let q = algebra.quiver();
        let maps = q.arrows().iter().map(|_| Mat::zeros(algebra.field(), 0, 0)).collect();
        Representation::new_unchecked(algebra, vec![0; q.num_vertices()], maps)
    }

    pub fn simple(algebra: &Algebra, x: usize) -> Representation {
        let q = algebra.quiver();
        let mut dims = vec![0; q.num_vertices()];
        dims[x] = 1;
        let maps = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(algebra.field(), dims[a.target], dims[a.source]))
            .collect();
        Representation::new_unchecked(algebra, dims, maps)
    }

    /// `P_x = A e_x`: basis paths starting at `x`, arrows acting by left composition.
    pub fn projective(algebra: &Algebra, x: usize) -> Representation {
        let q = algebra.quiver();
        let field = algebra.field();
        let n = q.num_vertices();
        // local coordinates of each basis path from x inside its target space
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut local = vec![usize::MAX; algebra.dim()];
        for i in algebra.basis_from(x) {
            let t = algebra.basis()[i].target();
            local[i] = at[t].len();
            at[t].push(i);
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for (a, arr) in q.arrows().iter().enumerate() {
            let mut m = Mat::zeros(field, dims[arr.target], dims[arr.source]);
            let ai = algebra.basis_index(&q.arrow_path(a)).expect("arrows are basis paths");
            for (col, &p) in at[arr.source].iter().enumerate() {
                for (k, c) in algebra.mul_basis(ai, p) {
                    m.set(local[*k], col, c.clone());
                }
            }
            maps.push(m);
        }
        Representation::new_unchecked(algebra, dims, maps)
    }

    /// `I_x = D(e_x A)`: at `y` the dual of the basis paths `y → x`.
    pub fn injective(algebra: &Algebra, x: usize) -> Representation {
        let q = algebra.quiver();
        let field = algebra.field();
        let n = q.num_vertices();
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut local = vec![usize::MAX; algebra.dim()];
        for (i, p) in algebra.basis().iter().enumerate() {
            if p.target() == x {
                local[i] = at[p.source()].len();
                at[p.source()].push(i);
            }
        }
        let dims: Vec<usize> = at.iter().map(Vec::len).collect();
        let mut maps = Vec::with_capacity(q.num_arrows());
        for (a, arr) in q.arrows().iter().enumerate() {
            // (a·φ)(r) = φ(r∘a) for r: target(a) → x
            let mut m = Mat::zeros(field, dims[arr.target], dims[arr.source]);
            let ai = algebra.basis_index(&q.arrow_path(a)).expect("arrows are basis paths");
            for (row, &r) in at[arr.target].iter().enumerate() {
                for (k, c) in algebra.mul_basis(r, ai) {
                    m.set(row, local[*k], c.clone());
                }
            }
            maps.push(m);
        }
        Representation::new_unchecked(algebra, dims, maps)
    }

    /// The regular module `A = ⊕ P_x`.
    pub fn regular(algebra: &Algebra) -> Representation {
        let ps: Vec<Representation> =
            (0..algebra.num_vertices()).map(|x| Representation::projective(algebra, x)).collect();
        super::direct_sum(algebra, &ps).0
    }

    /// `DA = ⊕ I_x`.
    pub fn dual_regular(algebra: &Algebra) -> Representation {
        let is: Vec<Representation> =
            (0..algebra.num_vertices()).map(|x| Representation::injective(algebra, x)).collect();
        super::direct_sum(algebra, &is).0
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.algebra
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.0.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.0.maps[a]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.0.maps
    }

    /// Start of each vertex block in the total space `⊕_x M(x)`.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.0.dims.len());
        let mut acc = 0;
        for &d in &self.0.dims {
            off.push(acc);
            acc += d;
        }
        off
    }

    /// Matrix by which a path acts, `dim target × dim source`.
    pub fn path_action(&self, p: &Path) -> Mat {
        let mut acc = Mat::identity(self.field(), self.dim(p.source()));
        for &a in p.arrows().iter().rev() {
            acc = self.map(a).mul(&acc);
        }
        acc
    }

    pub fn basis_action(&self, i: usize) -> Mat {
        self.path_action(&self.algebra().basis()[i])
    }

    /// Whether both modules carry identical matrices (not isomorphism).
    pub fn same_matrices(&self, other: &Representation) -> bool {
        self.0.dims == other.0.dims && self.0.maps == other.0.maps
    }

    pub fn same_algebra(&self, other: &Representation) -> bool {
        same_algebra(self.algebra(), other.algebra())
    }

    pub fn dim_vector_string(&self) -> String {
        let parts: Vec<String> = self.0.dims.iter().map(|d| d.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.same_matrices(other)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dim_vector_string())
    }
}

/// A module homomorphism: one matrix per vertex commuting with every arrow.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    source: Representation,
    target: Representation,
    maps: Vec<Mat>,
}

impl Morphism {
    pub fn new(source: &Representation, target: &Representation, maps: Vec<Mat>) -> Result<Morphism> {
        if !source.same_algebra(target) {
            return Err(Error::AlgebraMismatch);
        }
        let n = source.dims().len();
        if maps.len() != n {
            return Err(Error::InvalidMorphism(format!("{} matrices for {n} vertices", maps.len())));
        }
        for (x, m) in maps.iter().enumerate() {
            if m.shape() != (target.dim(x), source.dim(x)) {
                return Err(Error::InvalidMorphism(format!("bad shape at vertex {x}")));
            }
        }
        for (a, arr) in source.algebra().quiver().arrows().iter().enumerate() {
            let lhs = maps[arr.target].mul(source.map(a));
            let rhs = target.map(a).mul(&maps[arr.source]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("does not commute with arrow {}", arr.name)));
            }
        }
        Ok(Morphism::new_unchecked(source, target, maps))
    }

    pub(crate) fn new_unchecked(source: &Representation, target: &Representation, maps: Vec<Mat>) -> Morphism {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Morphism {
        let f = source.field();
        let maps = (0..source.dims().len())
            .map(|x| Mat::zeros(f, target.dim(x), source.dim(x)))
            .collect();
        Morphism::new_unchecked(source, target, maps)
    }

    pub fn identity(m: &Representation) -> Morphism {
        let maps = m.dims().iter().map(|&d| Mat::identity(m.field(), d)).collect();
        Morphism::new_unchecked(m, m, maps)
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn map(&self, x: usize) -> &Mat {
        &self.maps[x]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Result<Morphism> {
        if first.target.dims() != self.source.dims() || !first.target.same_algebra(&self.source) {
            return Err(Error::InvalidMorphism("morphisms do not compose".into()));
        }
        Ok(self.after(first))
    }

    /// `self ∘ first` without checks.
    pub(crate) fn after(&self, first: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect();
        Morphism::new_unchecked(&first.source, &self.target, maps)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect();
        Morphism::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn sub(&self, other: &Morphism) -> Morphism {
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.sub(b)).collect();
        Morphism::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        let maps = self.maps.iter().map(|a| a.scale(s)).collect();
        Morphism::new_unchecked(&self.source, &self.target, maps)
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let maps = self.maps.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism::new_unchecked(&self.target, &self.source, maps))
    }

    /// All entries, vertex by vertex, row-major.
    pub fn flatten(&self) -> Vec<Scalar> {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub(crate) fn from_flat(source: &Representation, target: &Representation, v: &[Scalar]) -> Morphism {
        let f = source.field();
        let mut maps = Vec::with_capacity(source.dims().len());
        let mut pos = 0;
        for x in 0..source.dims().len() {
            let (r, c) = (target.dim(x), source.dim(x));
            let mut m = Mat::zeros(f, r, c);
            for i in 0..r {
                for j in 0..c {
                    m.set(i, j, v[pos].clone());
                    pos += 1;
                }
            }
            maps.push(m);
        }
        Morphism::new_unchecked(source, target, maps)
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Mat {
        Mat::block_diag(self.source.field(), &self.maps)
    }

    pub fn rank(&self) -> usize {
        self.maps.iter().map(Mat::rank).sum()
    }
}
