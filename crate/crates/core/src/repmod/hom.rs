use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::repmod::rep::{Morphism, Representation};

/// Basis of `Hom(m, n)`: the solution space of `f_y M(a) = N(a) f_x` over all
/// arrows `a: x → y`.
pub fn hom_basis(m: &Representation, n: &Representation) -> Result<Vec<Morphism>> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra();
    let field = alg.field();
    let q = alg.quiver();
    let nv = q.num_vertices();
    let mut off = vec![0usize; nv + 1];
    for x in 0..nv {
        off[x + 1] = off[x] + n.dim(x) * m.dim(x);
    }
    let vars = off[nv];
    if vars == 0 {
        return Ok(Vec::new());
    }
    let eq_rows: usize = q.arrows().iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut eqs = Mat::zeros(field, eq_rows, vars);
    let mut row = 0;
    for (a, arr) in q.arrows().iter().enumerate() {
        let (x, y) = (arr.source, arr.target);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..n.dim(y) {
            for j in 0..m.dim(x) {
                // (f_y M(a))[i,j]
                for k in 0..m.dim(y) {
                    let c = ma.get(k, j);
                    if !c.is_zero() {
                        let v = off[y] + i * m.dim(y) + k;
                        let e = eqs.get(row, v).add(c);
                        eqs.set(row, v, e);
                    }
                }
                // − (N(a) f_x)[i,j]
                for k in 0..n.dim(x) {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        let v = off[x] + k * m.dim(x) + j;
                        let e = eqs.get(row, v).sub(c);
                        eqs.set(row, v, e);
                    }
                }
                row += 1;
            }
        }
    }
    Ok(eqs
        .kernel_basis()
        .into_iter()
        .map(|v| Morphism::from_flat(m, n, &v))
        .collect())
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    Ok(hom_basis(m, n)?.len())
}

/// A Hom space with a fixed basis and fast coordinates.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Representation,
    target: Representation,
    basis: Vec<Morphism>,
    /// Entry positions on which the basis is independent.
    probe: Vec<usize>,
    /// Inverse of the basis restricted to `probe`.
    probe_inv: Mat,
}

impl HomSpace {
    pub fn new(m: &Representation, n: &Representation) -> Result<HomSpace> {
        let basis = hom_basis(m, n)?;
        Ok(HomSpace::from_basis(m, n, basis))
    }

    /// Wraps an independent family of morphisms `m → n`.
    pub fn from_basis(m: &Representation, n: &Representation, basis: Vec<Morphism>) -> HomSpace {
        let field = m.field();
        let len: usize = (0..m.dims().len()).map(|x| m.dim(x) * n.dim(x)).sum();
        let cols: Vec<Vec<Scalar>> = basis.iter().map(Morphism::flatten).collect();
        let flat = Mat::from_columns(field, len, &cols);
        let probe = flat.transpose().independent_columns();
        assert_eq!(probe.len(), basis.len(), "basis must be independent");
        let probe_inv = flat.select_rows(&probe).inverse().expect("square and independent");
        HomSpace {
            source: m.clone(),
            target: n.clone(),
            basis,
            probe,
            probe_inv,
        }
    }

    pub fn source(&self) -> &Representation {
        &self.source
    }

    pub fn target(&self) -> &Representation {
        &self.target
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    /// Coordinates of `f` in the basis, or `None` if `f` is outside the span.
    pub fn coords(&self, f: &Morphism) -> Option<Vec<Scalar>> {
        let flat = f.flatten();
        let w: Vec<Scalar> = self.probe.iter().map(|&i| flat[i].clone()).collect();
        let c = self.probe_inv.apply(&w);
        let back = self.combine(&c);
        (back.flatten() == flat).then_some(c)
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Morphism {
        let mut acc = Morphism::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }
}

/// Whether some `r` satisfies `r ∘ u = id`.
pub fn has_retraction(u: &Morphism) -> Result<bool> {
    let basis = hom_basis(u.target(), u.source())?;
    let target = Morphism::identity(u.source()).flatten();
    solvable(u.source().field(), basis.iter().map(|h| h.after(u).flatten()).collect(), target)
}

/// Whether some `s` satisfies `v ∘ s = id`.
pub fn has_section(v: &Morphism) -> Result<bool> {
    let basis = hom_basis(v.target(), v.source())?;
    let target = Morphism::identity(v.target()).flatten();
    solvable(v.source().field(), basis.iter().map(|h| v.after(h).flatten()).collect(), target)
}

fn solvable(field: Field, cols: Vec<Vec<Scalar>>, target: Vec<Scalar>) -> Result<bool> {
    let n = target.len();
    if n == 0 {
        return Ok(true);
    }
    if cols.is_empty() {
        return Ok(target.iter().all(Scalar::is_zero));
    }
    let a = Mat::from_columns(field, n, &cols);
    let b = Mat::from_columns(field, n, &[target]);
    Ok(a.solve(&b)?.is_some())
}
