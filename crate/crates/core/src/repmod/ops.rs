use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::repmod::rep::{Morphism, Representation};

/// `⊕ mods` with its canonical injections and projections. Each vertex
/// space is the concatenation of the summand spaces in order.
pub fn direct_sum(algebra: &Algebra, mods: &[Representation]) -> (Representation, Vec<Morphism>, Vec<Morphism>) {
    let q = algebra.quiver();
    let field = algebra.field();
    let n = q.num_vertices();
    let dims: Vec<usize> = (0..n).map(|x| mods.iter().map(|m| m.dim(x)).sum()).collect();
    let maps = (0..q.num_arrows())
        .map(|a| Mat::block_diag(field, &mods.iter().map(|m| m.map(a).clone()).collect::<Vec<_>>()))
        .collect();
    let sum = Representation::new_unchecked(algebra, dims.clone(), maps);
    let mut inj = Vec::with_capacity(mods.len());
    let mut proj = Vec::with_capacity(mods.len());
    let mut start = vec![0usize; n];
    for m in mods {
        let mut i_maps = Vec::with_capacity(n);
        let mut p_maps = Vec::with_capacity(n);
        for x in 0..n {
            let mut i = Mat::zeros(field, dims[x], m.dim(x));
            i.paste(start[x], 0, &Mat::identity(field, m.dim(x)));
            p_maps.push(i.transpose());
            i_maps.push(i);
            start[x] += m.dim(x);
        }
        inj.push(Morphism::new_unchecked(m, &sum, i_maps));
        proj.push(Morphism::new_unchecked(&sum, m, p_maps));
    }
    (sum, inj, proj)
}

/// Submodule spanned at each vertex by the columns of `bases[x]`, which must
/// be linearly independent and stable under the arrows.
pub fn subrepresentation(m: &Representation, bases: &[Mat]) -> Result<(Representation, Morphism)> {
    let alg = m.algebra();
    let q = alg.quiver();
    let mut maps = Vec::with_capacity(q.num_arrows());
    for (a, arr) in q.arrows().iter().enumerate() {
        let image = m.map(a).mul(&bases[arr.source]);
        let x = bases[arr.target]
            .solve(&image)?
            .ok_or_else(|| Error::InvalidModule("subspaces are not stable under the arrows".into()))?;
        maps.push(x);
    }
    let dims = bases.iter().map(Mat::cols).collect();
    let sub = Representation::new_unchecked(alg, dims, maps);
    let inc = Morphism::new_unchecked(&sub, m, bases.to_vec());
    Ok((sub, inc))
}

/// Projection onto `m / ⊕ span(bases[x])`. The subspaces must be stable.
pub fn quotient(m: &Representation, bases: &[Mat]) -> Result<(Representation, Morphism)> {
    let alg = m.algebra();
    let field = alg.field();
    let q = alg.quiver();
    let mut pis = Vec::with_capacity(bases.len());
    let mut sections = Vec::with_capacity(bases.len());
    for (x, b) in bases.iter().enumerate() {
        // rows orthogonal to the subspace cut it out exactly
        let rows = if b.cols() == 0 {
            Mat::identity(field, m.dim(x))
        } else {
            let k = b.transpose().kernel_basis();
            Mat::from_columns(field, m.dim(x), &k).transpose()
        };
        let sigma = if rows.rows() == 0 {
            Mat::zeros(field, m.dim(x), 0)
        } else {
            rows.solve(&Mat::identity(field, rows.rows()))?.expect("rows are independent")
        };
        pis.push(rows);
        sections.push(sigma);
    }
    let mut maps = Vec::with_capacity(q.num_arrows());
    for (a, arr) in q.arrows().iter().enumerate() {
        let act = pis[arr.target].mul(m.map(a)).mul(&sections[arr.source]);
        maps.push(act);
    }
    let dims = pis.iter().map(Mat::rows).collect();
    let quo = Representation::new_unchecked(alg, dims, maps);
    let proj = Morphism::new_unchecked(m, &quo, pis);
    Ok((quo, proj))
}

pub fn kernel(f: &Morphism) -> (Representation, Morphism) {
    let src = f.source();
    let field = src.field();
    let bases: Vec<Mat> = f
        .maps()
        .iter()
        .enumerate()
        .map(|(x, m)| Mat::from_columns(field, src.dim(x), &m.kernel_basis()))
        .collect();
    subrepresentation(src, &bases).expect("kernels are submodules")
}

pub fn image(f: &Morphism) -> (Representation, Morphism) {
    let bases: Vec<Mat> = f.maps().iter().map(Mat::column_space).collect();
    subrepresentation(f.target(), &bases).expect("images are submodules")
}

pub fn cokernel(f: &Morphism) -> (Representation, Morphism) {
    let bases: Vec<Mat> = f.maps().iter().map(Mat::column_space).collect();
    quotient(f.target(), &bases).expect("images are submodules")
}

/// `rad M`: at each vertex the sum of the images of the incoming arrows.
pub fn radical(m: &Representation) -> (Representation, Morphism) {
    subrepresentation(m, &radical_bases(m)).expect("the radical is a submodule")
}

fn radical_bases(m: &Representation) -> Vec<Mat> {
    let alg = m.algebra();
    let q = alg.quiver();
    (0..q.num_vertices())
        .map(|y| {
            let mut acc = Mat::zeros(alg.field(), m.dim(y), 0);
            for a in q.arrows_into(y) {
                acc = acc.hstack(m.map(a));
            }
            acc.column_space()
        })
        .collect()
}

/// `M / rad M` with the projection.
pub fn top(m: &Representation) -> (Representation, Morphism) {
    quotient(m, &radical_bases(m)).expect("the radical is a submodule")
}

/// `D M` over the opposite algebra: transposed matrices along reversed arrows.
pub fn dual_over(m: &Representation, opposite: &Algebra) -> Result<Representation> {
    if opposite.quiver() != &m.algebra().quiver().opposite() || opposite.field() != m.field() {
        return Err(Error::AlgebraMismatch);
    }
    let maps = m.maps().iter().map(Mat::transpose).collect();
    Representation::new(opposite, m.dims().to_vec(), maps)
}

pub fn dual(m: &Representation) -> Result<Representation> {
    let op = Arc::new(m.algebra().opposite()?);
    dual_over(m, &op)
}

/// `D f : D N → D M` over the opposite algebra.
pub fn dual_morphism(f: &Morphism, dsource: &Representation, dtarget: &Representation) -> Morphism {
    let maps = f.maps().iter().map(Mat::transpose).collect();
    Morphism::new_unchecked(dtarget, dsource, maps)
}
