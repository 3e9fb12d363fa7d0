use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar};
use crate::repmod::ops::{direct_sum, kernel, top};
use crate::repmod::rep::{Morphism, Representation};

/// `⊕_j P_{x_j}` together with the generator vertices. At each vertex `y`
/// the basis lists, generator by generator, the basis paths `x_j → y`.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    generators: Vec<usize>,
    module: Representation,
    /// `coords[y][k] = (j, basis index)` for the `k`-th basis vector at `y`.
    coords: Vec<Vec<(usize, usize)>>,
}

impl ProjectiveSum {
    pub fn new(algebra: &Algebra, generators: Vec<usize>) -> ProjectiveSum {
        let ps: Vec<Representation> = generators.iter().map(|&x| Representation::projective(algebra, x)).collect();
        let module = direct_sum(algebra, &ps).0;
        let mut coords = vec![Vec::new(); algebra.num_vertices()];
        for (j, &x) in generators.iter().enumerate() {
            for i in algebra.basis_from(x) {
                coords[algebra.basis()[i].target()].push((j, i));
            }
        }
        ProjectiveSum {
            generators,
            module,
            coords,
        }
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    /// Position of generator `j` (its trivial path) inside its vertex space.
    pub fn generator_position(&self, j: usize) -> usize {
        let x = self.generators[j];
        let e = self.module.algebra().basis_index(&crate::algebra::Path::trivial(x)).expect("trivial path");
        self.coords[x].iter().position(|&c| c == (j, e)).expect("generator present")
    }

    /// The morphism `⊕ P_{x_j} → m` sending generator `j` to `elements[j] ∈ m(x_j)`.
    pub fn map_to(&self, m: &Representation, elements: &[Vec<Scalar>]) -> Morphism {
        let alg = m.algebra();
        let field = alg.field();
        let mut maps = Vec::with_capacity(self.coords.len());
        for (y, cs) in self.coords.iter().enumerate() {
            let mut f = Mat::zeros(field, m.dim(y), cs.len());
            for (col, &(j, p)) in cs.iter().enumerate() {
                let v = m.basis_action(p).apply(&elements[j]);
                for (r, s) in v.into_iter().enumerate() {
                    f.set(r, col, s);
                }
            }
            maps.push(f);
        }
        Morphism::new_unchecked(&self.module, m, maps)
    }
}

/// Projective cover `P ↠ m`, generated by lifts of a basis of `top m`.
pub fn projective_cover(m: &Representation) -> (ProjectiveSum, Morphism) {
    let alg = m.algebra();
    let field = alg.field();
    let (_, pi) = top(m);
    let mut gens = Vec::new();
    let mut elements = Vec::new();
    for x in 0..alg.num_vertices() {
        let p = pi.map(x);
        if p.rows() == 0 {
            continue;
        }
        let sigma = p.solve(&Mat::identity(field, p.rows())).unwrap().expect("projection is onto");
        for j in 0..sigma.cols() {
            gens.push(x);
            elements.push(sigma.column(j));
        }
    }
    let ps = ProjectiveSum::new(alg, gens);
    let f = ps.map_to(m, &elements);
    (ps, f)
}

/// A minimal projective resolution `… → P_1 → P_0 → M → 0`, possibly truncated.
#[derive(Clone, Debug)]
pub struct Resolution {
    module: Representation,
    terms: Vec<ProjectiveSum>,
    /// `differentials[i]: P_{i+1} → P_i`.
    differentials: Vec<Morphism>,
    augmentation: Morphism,
    complete: bool,
    cap: usize,
}

/// Iterated projective covers of syzygies, computing at most `P_0, …, P_cap`.
pub fn projective_resolution(m: &Representation, cap: usize) -> Resolution {
    let (p0, eps) = projective_cover(m);
    let mut terms = vec![p0];
    let mut differentials = Vec::new();
    let (mut syz, mut inc) = kernel(&eps);
    let mut complete = syz.is_zero();
    while !complete && terms.len() <= cap {
        let (p, cover) = projective_cover(&syz);
        let d = inc.after(&cover);
        let (k, kinc) = kernel(&cover);
        terms.push(p);
        differentials.push(d);
        syz = k;
        inc = kinc;
        complete = syz.is_zero();
    }
    Resolution {
        module: m.clone(),
        terms,
        differentials,
        augmentation: eps,
        complete,
        cap,
    }
}

impl Resolution {
    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn terms(&self) -> &[ProjectiveSum] {
        &self.terms
    }

    pub fn differentials(&self) -> &[Morphism] {
        &self.differentials
    }

    pub fn augmentation(&self) -> &Morphism {
        &self.augmentation
    }

    /// Whether the last computed syzygy vanished.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Projective dimension, or `ExceedsCap` if the resolution did not stop.
    pub fn pd(&self) -> Result<usize> {
        if !self.complete {
            return Err(Error::ExceedsCap(self.cap));
        }
        // trailing zero term only occurs for the zero module
        Ok(self.terms.len() - 1)
    }

    /// `Hom(P_i, n) = ⊕_j n(x_j)`; the map induced by `P_{i+1} → P_i`.
    fn coboundary(&self, n: &Representation, i: usize) -> Mat {
        let field = n.field();
        let src = &self.terms[i];
        let dst = &self.terms[i + 1];
        let d = &self.differentials[i];
        let col_off = offsets(src.generators().iter().map(|&x| n.dim(x)));
        let row_off = offsets(dst.generators().iter().map(|&x| n.dim(x)));
        let rows = *row_off.last().unwrap();
        let cols = *col_off.last().unwrap();
        let mut out = Mat::zeros(field, rows, cols);
        for (k, &y) in dst.generators().iter().enumerate() {
            let pos = dst.generator_position(k);
            let image = d.map(y).column(pos);
            for (c, &(j, p)) in image.iter().zip(&src.coords[y]) {
                if c.is_zero() {
                    continue;
                }
                let block = n.basis_action(p).scale(c);
                let cur = out.block(row_off[k], col_off[j], block.rows(), block.cols());
                out.paste(row_off[k], col_off[j], &cur.add(&block));
            }
        }
        out
    }

    fn cochain_dim(&self, n: &Representation, i: usize) -> usize {
        self.terms[i].generators().iter().map(|&x| n.dim(x)).sum()
    }

    /// `dim Ext^i(M, n)` for `i ≥ 1`.
    pub fn ext_dim(&self, n: &Representation, i: usize) -> Result<usize> {
        assert!(i >= 1, "Ext degree must be positive");
        if i >= self.terms.len() {
            if self.complete {
                return Ok(0);
            }
            return Err(Error::ExceedsCap(self.cap));
        }
        let c = self.cochain_dim(n, i);
        let out_rank = if i + 1 < self.terms.len() {
            self.coboundary(n, i).rank()
        } else if self.complete {
            0
        } else {
            return Err(Error::ExceedsCap(self.cap));
        };
        let in_rank = self.coboundary(n, i - 1).rank();
        Ok(c - out_rank - in_rank)
    }

    /// `dim Ext^i(M, n)` for every `i` in `1..=upto`.
    pub fn ext_dims(&self, n: &Representation, upto: usize) -> Result<Vec<usize>> {
        (1..=upto).map(|i| self.ext_dim(n, i)).collect()
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

pub fn pd(m: &Representation, cap: usize) -> Result<usize> {
    projective_resolution(m, cap).pd()
}

/// `dim Ext^i(m, n)` from a resolution of `m` computed up to `cap` terms.
pub fn ext_dim(m: &Representation, n: &Representation, i: usize, cap: usize) -> Result<usize> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let res = projective_resolution(m, cap.min(i + 1));
    match res.ext_dim(n, i) {
        Err(Error::ExceedsCap(_)) => Err(Error::ExceedsCap(cap)),
        other => other,
    }
}
