use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::quiver::{Path, Quiver};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};

/// A linear combination of parallel paths of length at least two, one
/// generator of the relation ideal. Terms are kept in descending path order
/// with nonzero coefficients, so the first term is the leading one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    terms: Vec<(Scalar, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Path)>) -> Result<Relation> {
        let mut merged: BTreeMap<Path, Scalar> = BTreeMap::new();
        for (c, p) in terms {
            let entry = merged.entry(p).or_insert_with(|| c.field().zero());
            *entry = entry.add(&c);
        }
        let terms: Vec<(Scalar, Path)> = merged
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (c, p))
            .collect();
        let Some((_, first)) = terms.first() else {
            return Err(Error::MalformedRelation("relation has no nonzero term".into()));
        };
        let (s, t) = (first.source(), first.target());
        for (_, p) in &terms {
            if p.source() != s || p.target() != t {
                return Err(Error::MalformedRelation("paths are not parallel".into()));
            }
            if p.len() < 2 {
                return Err(Error::MalformedRelation(format!(
                    "path of length {} in a relation; relations must lie in the square of the arrow ideal",
                    p.len()
                )));
            }
        }
        Ok(Relation { terms })
    }

    /// A single path set to zero.
    pub fn monomial(p: Path) -> Result<Relation> {
        let one = Field::Rational.one();
        Relation::new(vec![(one, p)])
    }

    pub fn terms(&self) -> &[(Scalar, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source()
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap()
    }

    fn in_field(&self, field: Field) -> Relation {
        // Monomial relations are built with rational coefficients; rescale
        // them into the target field.
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| {
                    let c = if c.field() == field {
                        c.clone()
                    } else {
                        field.parse(&c.to_string()).expect("coefficient converts")
                    };
                    (c, p.clone())
                })
                .collect(),
        }
    }

    fn reversed(&self) -> Relation {
        Relation::new(self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect())
            .expect("reversal preserves well-formedness")
    }
}

/// Linear combination over the basis of a presentation: `(basis index, coefficient)`
/// pairs sorted by index with no zero coefficients.
pub type BasisCombo = Vec<(usize, Scalar)>;

/// A bound quiver algebra `kQ/I` with its basis of irreducible paths and
/// multiplication table.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation {
    field: Field,
    quiver: Quiver,
    relations: Vec<Relation>,
    length_cap: usize,
    /// Every path of at least this length lies in the ideal.
    vanishing_length: usize,
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    reductions: HashMap<Path, BasisCombo>,
    table: Vec<Vec<BasisCombo>>,
}

pub type Algebra = Arc<AlgebraPresentation>;

pub fn default_length_cap(q: &Quiver) -> usize {
    (2 * q.num_vertices() * q.num_arrows()).max(2)
}

impl AlgebraPresentation {
    /// Computes a basis of irreducible paths for `kQ/I`.
    ///
    /// For increasing `n` the ideal is reduced modulo paths longer than `n`
    /// and echelonized with the largest paths as pivots; the search stops at
    /// the first `n` where every path of length `n` reduces to zero. The
    /// pivots then play the role of a completed rewriting system under the
    /// length-then-lexicographic order.
    pub fn build(
        field: Field,
        quiver: Quiver,
        relations: Vec<Relation>,
        length_cap: Option<usize>,
    ) -> Result<AlgebraPresentation> {
        let cap = length_cap.unwrap_or_else(|| default_length_cap(&quiver));
        let relations: Vec<Relation> = relations.into_iter().map(|r| r.in_field(field)).collect();
        for r in &relations {
            for (_, p) in r.terms() {
                if !quiver.contains(p) {
                    return Err(Error::MalformedRelation(format!(
                        "path {p} is not in the quiver"
                    )));
                }
            }
        }
        let mut by_len: Vec<Vec<Path>> = vec![quiver.paths_of_length(0)];
        for n in 1..=cap.max(1) {
            by_len.push(quiver.paths_of_length(n));
            if let Some(done) = try_reduce(field, &relations, &by_len, n) {
                let (basis, reductions) = done;
                let index = basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
                let mut alg = AlgebraPresentation {
                    field,
                    quiver,
                    relations,
                    length_cap: cap,
                    vanishing_length: n,
                    basis,
                    index,
                    reductions,
                    table: Vec::new(),
                };
                alg.table = alg.compute_table();
                return Ok(alg);
            }
        }
        Err(Error::NotAdmissible(cap))
    }

    /// Path algebra of an acyclic quiver without relations.
    pub fn path_algebra(field: Field, quiver: Quiver) -> Result<AlgebraPresentation> {
        AlgebraPresentation::build(field, quiver, Vec::new(), None)
    }

    pub fn into_shared(self) -> Algebra {
        Arc::new(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    pub fn vanishing_length(&self) -> usize {
        self.vanishing_length
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Basis paths starting at `source`, in basis order.
    pub fn basis_from(&self, source: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&i| self.basis[i].source() == source).collect()
    }

    /// Basis paths from `source` to `target`, in basis order.
    pub fn basis_between(&self, source: usize, target: usize) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| self.basis[i].source() == source && self.basis[i].target() == target)
            .collect()
    }

    /// Same presentation data, ignoring computed caches.
    pub fn same_as(&self, other: &AlgebraPresentation) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field && self.quiver == other.quiver && self.relations == other.relations)
    }

    /// Normal form of a single path.
    pub fn reduce_path(&self, p: &Path) -> BasisCombo {
        if p.len() >= self.vanishing_length {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(p) {
            return vec![(i, self.field.one())];
        }
        self.reductions.get(p).cloned().unwrap_or_default()
    }

    /// Unique normal form of a linear combination of paths modulo the ideal.
    pub fn normal_form(&self, combo: &[(Scalar, Path)]) -> Result<BasisCombo> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, p) in combo {
            if !self.quiver.contains(p) {
                return Err(Error::ForeignPath(p.to_string()));
            }
            for (i, x) in self.reduce_path(p) {
                let e = acc.entry(i).or_insert_with(|| self.field.zero());
                e.add_mul_assign(c, &x);
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Product `basis[i] ∘ basis[j]` (first `j`, then `i`).
    pub fn mul_basis(&self, i: usize, j: usize) -> &BasisCombo {
        &self.table[i][j]
    }

    pub fn multiplication_table(&self) -> &[Vec<BasisCombo>] {
        &self.table
    }

    fn compute_table(&self) -> Vec<Vec<BasisCombo>> {
        let n = self.basis.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (i, row) in table.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                if let Some(p) = self.basis[i].compose(&self.basis[j]) {
                    *cell = self.reduce_path(&p);
                }
            }
        }
        table
    }

    /// Opposite algebra: arrows and relation paths reversed.
    pub fn opposite(&self) -> Result<AlgebraPresentation> {
        AlgebraPresentation::build(
            self.field,
            self.quiver.opposite(),
            self.relations.iter().map(Relation::reversed).collect(),
            Some(self.length_cap),
        )
    }

    /// Entry `(j, i)` is `dim e_j A e_i`, the number of basis paths from `i` to `j`.
    pub fn hom_space_dims(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut d = vec![vec![0; n]; n];
        for p in &self.basis {
            d[p.target()][p.source()] += 1;
        }
        d
    }

    /// Same algebra with coefficients read in another field.
    pub fn over_field(&self, field: Field) -> Result<AlgebraPresentation> {
        let rels = self
            .relations
            .iter()
            .map(|r| {
                let terms = r
                    .terms()
                    .iter()
                    .map(|(c, p)| Ok((field.parse(&c.to_string())?, p.clone())))
                    .collect::<Result<Vec<_>>>()?;
                Relation::new(terms)
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraPresentation::build(field, self.quiver.clone(), rels, Some(self.length_cap))
    }
}

type Reduced = (Vec<Path>, HashMap<Path, BasisCombo>);

/// One round of the truncated reduction at length `n`; `None` if some path
/// of length `n` survives.
fn try_reduce(
    field: Field,
    relations: &[Relation],
    by_len: &[Vec<Path>],
    n: usize,
) -> Option<Reduced> {
    // Columns: every path of length <= n, largest first.
    let mut columns: Vec<Path> = by_len.iter().flatten().cloned().collect();
    columns.sort();
    columns.reverse();
    let col_of: HashMap<&Path, usize> = columns.iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in relations {
        let m = r.min_len();
        if m > n {
            continue;
        }
        let slack = n - m;
        for lq in 0..=slack {
            for q in by_len[lq].iter().filter(|q| q.target() == r.source()) {
                for ps in &by_len[..=slack - lq] {
                    for p in ps.iter().filter(|p| p.source() == r.target()) {
                        let mut row = vec![field.zero(); columns.len()];
                        let mut nonzero = false;
                        for (c, t) in r.terms() {
                            let full = p.compose(t).and_then(|pt| pt.compose(q)).unwrap();
                            if full.len() <= n {
                                row[col_of[&full]] = c.clone();
                                nonzero = true;
                            }
                        }
                        if nonzero {
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    let echelon = if rows.is_empty() {
        None
    } else {
        Some(Mat::from_rows(field, rows).expect("uniform rows").echelon())
    };
    let pivots: Vec<usize> = echelon.as_ref().map(|e| e.pivots.clone()).unwrap_or_default();
    let mut pivot_row = vec![None; columns.len()];
    for (r, &c) in pivots.iter().enumerate() {
        pivot_row[c] = Some(r);
    }
    let basis_cols: Vec<usize> = (0..columns.len()).filter(|&c| pivot_row[c].is_none()).collect();

    // Every path of length n must reduce to zero.
    for (c, p) in columns.iter().enumerate() {
        if p.len() != n {
            continue;
        }
        {
            let r = pivot_row[c]?;
            let red = &echelon.as_ref().unwrap().reduced;
            if basis_cols.iter().any(|&b| !red.get(r, b).is_zero()) {
                return None;
            }
        }
    }

    let mut basis: Vec<Path> = basis_cols.iter().map(|&c| columns[c].clone()).collect();
    basis.sort();
    let basis_pos: HashMap<&Path, usize> = basis.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut reductions = HashMap::new();
    if let Some(e) = &echelon {
        for (r, &c) in e.pivots.iter().enumerate() {
            let mut combo: Vec<(usize, Scalar)> = basis_cols
                .iter()
                .filter(|&&b| !e.reduced.get(r, b).is_zero())
                .map(|&b| (basis_pos[&columns[b]], e.reduced.get(r, b).neg()))
                .collect();
            combo.sort_by_key(|(i, _)| *i);
            reductions.insert(columns[c].clone(), combo);
        }
    }
    Some((basis, reductions))
}
