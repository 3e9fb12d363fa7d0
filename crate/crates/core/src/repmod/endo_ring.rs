use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::Result;
use crate::exactla::{Field, Mat, Scalar};
use crate::repmod::hom::HomSpace;
use crate::repmod::rep::{Morphism, Representation};

/// `End(M)` with its Jacobson radical.
#[derive(Clone, Debug)]
pub struct EndoStructure {
    space: HomSpace,
    /// Coordinates of a basis of the radical.
    radical: Vec<Vec<Scalar>>,
}

impl EndoStructure {
    pub fn basis(&self) -> &[Morphism] {
        self.space.basis()
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn radical_coords(&self) -> &[Vec<Scalar>] {
        &self.radical
    }

    pub fn radical_basis(&self) -> Vec<Morphism> {
        self.radical.iter().map(|c| self.space.combine(c)).collect()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    pub fn is_local(&self) -> bool {
        self.semisimple_dim() == 1
    }

    /// `c[i][j][k]`: coefficient of `b_k` in `b_i ∘ b_j`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Scalar>>> {
        let b = self.space.basis();
        b.iter()
            .map(|x| {
                b.iter()
                    .map(|y| self.space.coords(&x.after(y)).expect("End(M) is closed under composition"))
                    .collect()
            })
            .collect()
    }

    /// Whether `f` lies in the radical.
    pub fn in_radical(&self, f: &Morphism) -> bool {
        let Some(c) = self.space.coords(f) else {
            return false;
        };
        if self.radical.is_empty() {
            return c.iter().all(Scalar::is_zero);
        }
        let field = f.source().field();
        let r = Mat::from_columns(field, self.dim(), &self.radical);
        r.solve(&Mat::from_columns(field, self.dim(), &[c])).unwrap().is_some()
    }
}

pub fn endo_structure(m: &Representation) -> Result<EndoStructure> {
    let space = HomSpace::new(m, m)?;
    let radical = radical_coords(&space);
    Ok(EndoStructure { space, radical })
}

/// Radical of a subalgebra `E ⊆ End_k(M)` given by a basis.
///
/// The ideals `I_i = { a ∈ I_{i-1} : g_i(ab) = 0 for all b }` with
/// `g_i(x) = tr(x̃^{p^i}) / p^i mod p` shrink to the radical once `p^i`
/// exceeds `dim M`. In characteristic zero only the trace form `g_0` is used.
pub(crate) fn radical_coords(space: &HomSpace) -> Vec<Vec<Scalar>> {
    let m = space.source();
    let field = m.field();
    let d = space.dim();
    let n = m.total_dim();
    let basis = space.basis();
    let steps = match field {
        Field::Rational => 0,
        Field::Prime(p) => {
            let mut l = 0;
            let mut pw = p as u128;
            while pw <= n as u128 {
                l += 1;
                pw *= p as u128;
            }
            l
        }
    };
    // current ideal as coordinate vectors (columns)
    let mut ideal: Vec<Vec<Scalar>> = (0..d)
        .map(|i| (0..d).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    for i in 0..=steps {
        if ideal.is_empty() {
            break;
        }
        let elems: Vec<Morphism> = ideal.iter().map(|c| space.combine(c)).collect();
        let mut g = Mat::zeros(field, d, elems.len());
        for (l, b) in basis.iter().enumerate() {
            for (k, a) in elems.iter().enumerate() {
                let v = if i == 0 {
                    trace_of_product(a, b)
                } else {
                    frobenius_trace(&a.after(b), field.characteristic(), i)
                };
                g.set(l, k, v);
            }
        }
        let kernel = g.kernel_basis();
        let cur = Mat::from_columns(field, d, &ideal);
        ideal = kernel.iter().map(|v| cur.apply(v)).collect();
    }
    // canonical basis of the radical
    if ideal.is_empty() {
        return ideal;
    }
    let e = Mat::from_columns(field, d, &ideal).transpose().echelon();
    (0..e.pivots.len()).map(|r| e.reduced.row(r).to_vec()).collect()
}

/// `tr(a ∘ b)` on the total space.
fn trace_of_product(a: &Morphism, b: &Morphism) -> Scalar {
    let field = a.source().field();
    let mut acc = field.zero();
    for (fa, fb) in a.maps().iter().zip(b.maps()) {
        let (r, c) = fa.shape();
        for i in 0..r {
            for j in 0..c {
                acc.add_mul_assign(fa.get(i, j), fb.get(j, i));
            }
        }
    }
    acc
}

/// `tr(x̃^{p^i}) / p^i mod p` with `x̃` the lift of `x` to residues in `[0, p)`.
fn frobenius_trace(x: &Morphism, p: u64, i: usize) -> Scalar {
    let modulus = BigUint::from(p).pow(i as u32 + 1);
    let exp = BigUint::from(p).pow(i as u32);
    let mut total = BigUint::from(0u32);
    for block in x.maps() {
        let n = block.rows();
        if n == 0 {
            continue;
        }
        let lifted: Vec<Vec<BigUint>> = (0..n)
            .map(|r| (0..n).map(|c| BigUint::from(block.get(r, c).residue().unwrap())).collect())
            .collect();
        let pw = mat_pow_mod(&lifted, &exp, &modulus);
        for (k, row) in pw.iter().enumerate() {
            total += &row[k];
        }
    }
    total %= &modulus;
    let pi = BigUint::from(p).pow(i as u32);
    debug_assert!((&total % &pi) == BigUint::from(0u32));
    let v = (total / pi) % BigUint::from(p);
    Field::Prime(p).from_i64(v.to_u64().expect("residue fits") as i64)
}

fn mat_mul_mod(a: &[Vec<BigUint>], b: &[Vec<BigUint>], m: &BigUint) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut out = vec![vec![BigUint::from(0u32); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == BigUint::from(0u32) {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
        for v in out[i].iter_mut() {
            *v %= m;
        }
    }
    out
}

fn mat_pow_mod(a: &[Vec<BigUint>], e: &BigUint, m: &BigUint) -> Vec<Vec<BigUint>> {
    let n = a.len();
    let mut acc: Vec<Vec<BigUint>> = (0..n)
        .map(|i| (0..n).map(|j| BigUint::from(u32::from(i == j))).collect())
        .collect();
    let mut base = a.to_vec();
    for bit in (0..e.bits()).map(|b| e.bit(b)) {
        if bit {
            acc = mat_mul_mod(&acc, &base, m);
        }
        base = mat_mul_mod(&base, &base, m);
    }
    acc
}
