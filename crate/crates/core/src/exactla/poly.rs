//! Univariate polynomials over an exact field, just enough to find the
//! eigenvalues of an endomorphism that lie in the ground field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactla::mat::Mat;
use crate::exactla::scalar::{Field, Scalar};

/// Coefficients from the constant term upwards; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn constant(c: Scalar) -> Poly {
        let f = c.field();
        Poly::new(f, vec![c])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: &Scalar) -> Poly {
        let f = root.field();
        Poly::new(f, vec![root.neg(), f.one()])
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = self.field.zero();
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&z);
                let b = other.coeffs.get(i).unwrap_or(&z);
                a.add(b)
            })
            .collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j].add_mul_assign(a, b);
            }
        }
        Poly::new(self.field, c)
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.leading().unwrap().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&c.mul(dc));
            }
            quot[k] = c;
        }
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: BigInt, m: &Poly) -> Poly {
        let mut acc = Poly::constant(self.field.one()).rem(m);
        let mut base = self.rem(m);
        let two = BigInt::from(2);
        while e.is_positive() {
            if e.is_odd() {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e /= &two;
        }
        acc
    }

    /// The distinct roots lying in the ground field, sorted by their
    /// display form for determinism.
    pub fn roots(&self) -> Vec<Scalar> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = match self.field {
            Field::Rational => rational_roots(self),
            Field::Prime(p) => prime_field_roots(self, p),
        };
        roots.sort_by_key(|r| r.to_string());
        roots.dedup();
        roots
    }
}

/// Characteristic polynomial `det(x - m)` via reduction to Hessenberg form.
pub fn charpoly(m: &Mat) -> Poly {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let field = m.field();
    let n = m.rows();
    let mut h = m.clone();
    for col in 0..n.saturating_sub(2) {
        let pivot_row = col + 1;
        let Some(i) = (pivot_row..n).find(|&i| !h.get(i, col).is_zero()) else {
            continue;
        };
        if i != pivot_row {
            for j in 0..n {
                let a = h.get(i, j).clone();
                let b = h.get(pivot_row, j).clone();
                h.set(i, j, b);
                h.set(pivot_row, j, a);
            }
            for r in 0..n {
                let a = h.get(r, i).clone();
                let b = h.get(r, pivot_row).clone();
                h.set(r, i, b);
                h.set(r, pivot_row, a);
            }
        }
        let piv_inv = h.get(pivot_row, col).inv().unwrap();
        for j in pivot_row + 1..n {
            let u = h.get(j, col).mul(&piv_inv);
            if u.is_zero() {
                continue;
            }
            // row_j -= u * row_pivot ; col_pivot += u * col_j
            for k in 0..n {
                let v = h.get(j, k).sub(&u.mul(h.get(pivot_row, k)));
                h.set(j, k, v);
            }
            for r in 0..n {
                let v = h.get(r, pivot_row).add(&u.mul(h.get(r, j)));
                h.set(r, pivot_row, v);
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    let mut p: Vec<Poly> = vec![Poly::constant(field.one())];
    for k in 1..=n {
        let diag = h.get(k - 1, k - 1).clone();
        let mut next = Poly::x(field).sub(&Poly::constant(diag)).mul(&p[k - 1]);
        let mut prod = field.one();
        for i in (1..k).rev() {
            prod = prod.mul(h.get(i, i - 1));
            let coeff = prod.mul(h.get(i - 1, k - 1));
            if !coeff.is_zero() {
                next = next.sub(&p[i - 1].scale(&coeff));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}

fn rational_roots(poly: &Poly) -> Vec<Scalar> {
    let field = Field::Rational;
    // Clear denominators.
    let mut lcm = BigInt::one();
    for c in poly.coeffs() {
        lcm = lcm.lcm(c.as_rational().unwrap().denom());
    }
    let mut ints: Vec<BigInt> = poly
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().unwrap() * num_rational::BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    if ints[0].is_zero() {
        roots.push(field.zero());
        while ints.first().is_some_and(Zero::is_zero) {
            ints.remove(0);
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let (Some(nums), Some(dens)) = (divisors(&a0), divisors(&an)) else {
        return roots;
    };
    for d in &nums {
        for e in &dens {
            for sign in [1i64, -1] {
                let cand = num_rational::BigRational::new(BigInt::from(*d) * sign, BigInt::from(*e));
                let s = Scalar::Q(cand);
                if poly.eval(&s).is_zero() {
                    roots.push(s);
                }
            }
        }
    }
    roots
}

/// Positive divisors, or `None` when the number is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.to_u64()?;
    if n > 1 << 40 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Some(out)
}

fn prime_field_roots(poly: &Poly, p: u64) -> Vec<Scalar> {
    let field = Field::Prime(p);
    if p <= 1 << 12 {
        return (0..p as i64)
            .map(|v| field.from_i64(v))
            .filter(|s| poly.eval(s).is_zero())
            .collect();
    }
    // Split off the product of distinct linear factors, then separate the
    // roots with Cantor-Zassenhaus using deterministic shifts.
    let x = Poly::x(field);
    let xp = x.pow_mod(BigInt::from(p), &poly.monic());
    let g = poly.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&g, p, &mut out);
    out
}

fn split_linear(g: &Poly, p: u64, out: &mut Vec<Scalar>) {
    let field = Field::Prime(p);
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let m = g.monic();
            out.push(m.coeffs()[0].neg());
        }
        Some(_) => {
            let half = BigInt::from((p - 1) / 2);
            for a in 0..p as i64 {
                let shift = Poly::new(field, vec![field.from_i64(a), field.one()]);
                let h = shift.pow_mod(half.clone(), g).sub(&Poly::constant(field.one()));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && Some(dd) < g.degree() {
                    let (q, _) = g.divrem(&d);
                    split_linear(&d, p, out);
                    split_linear(&q, p, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval_matrix(p: &Poly, m: &Mat) -> Mat {
        let mut acc = Mat::zeros(m.field(), m.rows(), m.cols());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(m).add(&Mat::identity(m.field(), m.rows()).scale(c));
        }
        acc
    }

    #[test]
    fn cayley_hamilton_on_a_dense_matrix() {
        let q = Field::Rational;
        let m = Mat::from_i64(q, 4, 4, &[2, -1, 0, 3, 1, 0, 4, 1, 0, 5, -2, 0, 7, 1, 1, 1]);
        let p = charpoly(&m);
        assert_eq!(p.degree(), Some(4));
        assert!(p.leading().unwrap().is_one());
        assert!(eval_matrix(&p, &m).is_zero());
    }

    #[test]
    fn charpoly_of_triangular_matrix_has_diagonal_roots() {
        let q = Field::Rational;
        let m = Mat::from_i64(q, 3, 3, &[2, 5, 1, 0, -3, 4, 0, 0, 2]);
        let roots = charpoly(&m).roots();
        assert_eq!(roots, vec![q.from_i64(-3), q.from_i64(2)]);
    }

    #[test]
    fn rational_roots_with_denominators() {
        let q = Field::Rational;
        // (2x - 1)(x + 3) x^2 (x^2 + 1)
        let f = Poly::new(q, vec![q.from_i64(-1), q.from_i64(2)])
            .mul(&Poly::linear(&q.from_i64(-3)))
            .mul(&Poly::x(q))
            .mul(&Poly::x(q))
            .mul(&Poly::new(q, vec![q.one(), q.zero(), q.one()]));
        let roots = f.roots();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&q.parse("1/2").unwrap()));
        assert!(roots.contains(&q.from_i64(-3)));
        assert!(roots.contains(&q.zero()));
    }

    #[test]
    fn large_prime_root_finding() {
        let f = Field::prime(1_000_003).unwrap();
        let poly = Poly::linear(&f.from_i64(17))
            .mul(&Poly::linear(&f.from_i64(123_456)))
            .mul(&Poly::new(f, vec![f.from_i64(2), f.zero(), f.one()]));
        let roots = poly.roots();
        assert!(roots.contains(&f.from_i64(17)));
        assert!(roots.contains(&f.from_i64(123_456)));
        for r in &roots {
            assert!(poly.eval(r).is_zero());
        }
    }
}
