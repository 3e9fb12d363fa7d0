use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar};
use crate::repmod::{
    cokernel, direct_sum, endo_structure, find_isomorphism, has_retraction, has_section, hom_basis, is_indecomposable, kernel,
    projective_resolution, EndoStructure, HomSpace, Morphism, Representation, Resolution,
};
use crate::tilting::{Approximation, Coresolution, ExchangeSequence, TiltingVerdict};

/// Cheap isomorphism invariant of an indecomposable module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dims: Vec<usize>,
    pub end_dim: usize,
    pub rad_dim: usize,
}

/// Result of a successful mutation at one summand.
#[derive(Clone, Debug)]
pub struct Mutation {
    /// The new summand ids, with the exchanged position replaced.
    pub ids: Vec<usize>,
    pub index: usize,
    pub removed: usize,
    pub added: usize,
    /// `0 → left → middle → right → 0`; for a left mutation `left` is the
    /// removed summand, for a right mutation it is the added one.
    pub sequence: ExchangeSequence,
}

/// Registry of indecomposable modules over one algebra, identified up to
/// isomorphism, with cached Hom spaces, resolutions and Ext groups.
pub struct Session {
    algebra: Algebra,
    pd_cap: usize,
    seed: u64,
    modules: Vec<Representation>,
    ends: Vec<EndoStructure>,
    fingerprints: Vec<Fingerprint>,
    homs: HashMap<(usize, usize), Arc<HomSpace>>,
    resolutions: HashMap<usize, Arc<Resolution>>,
    exts: HashMap<(usize, usize), Result<Vec<usize>>>,
    verdicts: HashMap<Vec<usize>, TiltingVerdict>,
    gate_disagreements: usize,
}

impl Session {
    /// `pd_cap` defaults to the dimension of the algebra.
    pub fn new(algebra: &Algebra, pd_cap: Option<usize>, seed: u64) -> Session {
        Session {
            algebra: algebra.clone(),
            pd_cap: pd_cap.unwrap_or_else(|| algebra.dim()),
            seed,
            modules: Vec::new(),
            ends: Vec::new(),
            fingerprints: Vec::new(),
            homs: HashMap::new(),
            resolutions: HashMap::new(),
            exts: HashMap::new(),
            verdicts: HashMap::new(),
            gate_disagreements: 0,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn pd_cap(&self) -> usize {
        self.pd_cap
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn module(&self, id: usize) -> &Representation {
        &self.modules[id]
    }

    pub fn modules(&self) -> &[Representation] {
        &self.modules
    }

    pub fn fingerprint(&self, id: usize) -> &Fingerprint {
        &self.fingerprints[id]
    }

    pub fn endomorphisms(&self, id: usize) -> &EndoStructure {
        &self.ends[id]
    }

    /// How often the `Y ∉ add(T̄)` gate and the non-split gate disagreed.
    pub fn gate_disagreements(&self) -> usize {
        self.gate_disagreements
    }

    fn lookup(&self, m: &Representation, fp: &Fingerprint) -> Option<usize> {
        (0..self.modules.len())
            .filter(|&i| &self.fingerprints[i] == fp)
            .find(|&i| find_isomorphism(&self.modules[i], m, self.seed).is_some())
    }

    /// Id of an indecomposable module, registering it if new.
    pub fn intern(&mut self, m: &Representation) -> Result<usize> {
        if !m.same_algebra(&Representation::zero(&self.algebra)) {
            return Err(Error::AlgebraMismatch);
        }
        let end = endo_structure(m)?;
        let fp = Fingerprint {
            dims: m.dims().to_vec(),
            end_dim: end.dim(),
            rad_dim: end.radical_dim(),
        };
        if let Some(i) = self.lookup(m, &fp) {
            return Ok(i);
        }
        self.modules.push(m.clone());
        self.ends.push(end);
        self.fingerprints.push(fp);
        Ok(self.modules.len() - 1)
    }

    /// Ids of a list of indecomposable summands, in the given order.
    pub fn intern_all(&mut self, ms: &[Representation]) -> Result<Vec<usize>> {
        ms.iter().map(|m| self.intern(m)).collect()
    }

    pub fn regular_ids(&mut self) -> Result<Vec<usize>> {
        let alg = self.algebra.clone();
        (0..alg.num_vertices())
            .map(|x| self.intern(&Representation::projective(&alg, x)))
            .collect()
    }

    pub fn dual_regular_ids(&mut self) -> Result<Vec<usize>> {
        let alg = self.algebra.clone();
        (0..alg.num_vertices())
            .map(|x| self.intern(&Representation::injective(&alg, x)))
            .collect()
    }

    pub fn hom(&mut self, a: usize, b: usize) -> Result<Arc<HomSpace>> {
        if let Some(h) = self.homs.get(&(a, b)) {
            return Ok(h.clone());
        }
        let h = if a == b {
            Arc::new(self.ends[a].space().clone())
        } else {
            Arc::new(HomSpace::new(&self.modules[a], &self.modules[b])?)
        };
        self.homs.insert((a, b), h.clone());
        Ok(h)
    }

    /// `rad(G_a, G_b)`: all of Hom for distinct summands, `rad End` on the diagonal.
    fn radical_maps(&mut self, a: usize, b: usize) -> Result<Vec<Morphism>> {
        if a == b {
            Ok(self.ends[a].radical_basis())
        } else {
            Ok(self.hom(a, b)?.basis().to_vec())
        }
    }

    pub fn resolution(&mut self, a: usize) -> Arc<Resolution> {
        if let Some(r) = self.resolutions.get(&a) {
            return r.clone();
        }
        let r = Arc::new(projective_resolution(&self.modules[a], self.pd_cap));
        self.resolutions.insert(a, r.clone());
        r
    }

    pub fn pd(&mut self, a: usize) -> Result<usize> {
        self.resolution(a).pd()
    }

    /// `dim Ext^i(G_a, G_b)` for `i = 1..=pd(G_a)`.
    pub fn ext(&mut self, a: usize, b: usize) -> Result<Vec<usize>> {
        if let Some(e) = self.exts.get(&(a, b)) {
            return e.clone();
        }
        let res = self.resolution(a);
        let e = res.pd().and_then(|p| res.ext_dims(&self.modules[b], p));
        self.exts.insert((a, b), e.clone());
        e
    }

    pub fn ext1(&mut self, a: usize, b: usize) -> Result<usize> {
        let res = self.resolution(a);
        match res.ext_dim(&self.modules[b], 1) {
            Err(Error::ExceedsCap(_)) => Err(Error::ExceedsCap(self.pd_cap)),
            other => other,
        }
    }

    /// `Ext^i(T, T) = 0` for all `i ≥ 1`.
    pub fn is_selforthogonal(&mut self, ids: &[usize]) -> Result<bool> {
        for &a in ids {
            for &b in ids {
                if self.ext(a, b)?.iter().any(|&e| e > 0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `t1 ≤ t2` iff `Ext^i(t2, t1) = 0` for all `i ≥ 1`.
    pub fn leq(&mut self, t1: &[usize], t2: &[usize]) -> Result<bool> {
        for &a in t2 {
            for &b in t1 {
                if self.ext(a, b)?.iter().any(|&e| e > 0) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn hom_from(&mut self, x: &Representation, x_id: Option<usize>, j: usize) -> Result<Vec<Morphism>> {
        match x_id {
            Some(i) => Ok(self.hom(i, j)?.basis().to_vec()),
            None => hom_basis(x, &self.modules[j]),
        }
    }

    fn hom_into(&mut self, y: &Representation, y_id: Option<usize>, j: usize) -> Result<Vec<Morphism>> {
        match y_id {
            Some(i) => Ok(self.hom(j, i)?.basis().to_vec()),
            None => hom_basis(&self.modules[j], y),
        }
    }

    /// Minimal left `add(gens)`-approximation of `x`. `gens` must be distinct ids.
    ///
    /// `G_j` occurs with multiplicity `dim Hom(x, G_j) / R_j`, where `R_j` is
    /// spanned by the maps `x → G_k → G_j` with the second factor radical.
    pub fn left_approximation(
        &mut self,
        x: &Representation,
        x_id: Option<usize>,
        gens: &[usize],
    ) -> Result<Approximation> {
        let homs: Vec<Vec<Morphism>> = gens
            .iter()
            .map(|&j| self.hom_from(x, x_id, j))
            .collect::<Result<_>>()?;
        let mut chosen: Vec<Vec<Morphism>> = Vec::with_capacity(gens.len());
        for (jj, &j) in gens.iter().enumerate() {
            let mut span = Vec::new();
            for (kk, &k) in gens.iter().enumerate() {
                for phi in self.radical_maps(k, j)? {
                    for h in &homs[kk] {
                        span.push(phi.after(h).flatten());
                    }
                }
            }
            let cands: Vec<Vec<Scalar>> = homs[jj].iter().map(Morphism::flatten).collect();
            let picked = complement(self.algebra.field(), span, &cands);
            chosen.push(picked.into_iter().map(|i| homs[jj][i].clone()).collect());
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for (jj, &j) in gens.iter().enumerate() {
            for f in &chosen[jj] {
                parts.push(self.modules[j].clone());
                maps.push(f.clone());
            }
        }
        let middle = direct_sum(&self.algebra, &parts).0;
        let field = self.algebra.field();
        let vertex_maps = (0..self.algebra.num_vertices())
            .map(|v| {
                maps.iter()
                    .fold(Mat::zeros(field, 0, x.dim(v)), |acc, f| acc.vstack(f.map(v)))
            })
            .collect();
        Ok(Approximation {
            morphism: Morphism::new_unchecked(x, &middle, vertex_maps),
            multiplicities: chosen.iter().map(Vec::len).collect(),
            generators: gens.iter().map(|&j| self.modules[j].clone()).collect(),
        })
    }

    /// Minimal right `add(gens)`-approximation of `y`.
    pub fn right_approximation(
        &mut self,
        y: &Representation,
        y_id: Option<usize>,
        gens: &[usize],
    ) -> Result<Approximation> {
        let homs: Vec<Vec<Morphism>> = gens
            .iter()
            .map(|&j| self.hom_into(y, y_id, j))
            .collect::<Result<_>>()?;
        let mut chosen: Vec<Vec<Morphism>> = Vec::with_capacity(gens.len());
        for (jj, &j) in gens.iter().enumerate() {
            let mut span = Vec::new();
            for (kk, &k) in gens.iter().enumerate() {
                for phi in self.radical_maps(j, k)? {
                    for h in &homs[kk] {
                        span.push(h.after(&phi).flatten());
                    }
                }
            }
            let cands: Vec<Vec<Scalar>> = homs[jj].iter().map(Morphism::flatten).collect();
            let picked = complement(self.algebra.field(), span, &cands);
            chosen.push(picked.into_iter().map(|i| homs[jj][i].clone()).collect());
        }
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for (jj, &j) in gens.iter().enumerate() {
            for f in &chosen[jj] {
                parts.push(self.modules[j].clone());
                maps.push(f.clone());
            }
        }
        let middle = direct_sum(&self.algebra, &parts).0;
        let field = self.algebra.field();
        let vertex_maps = (0..self.algebra.num_vertices())
            .map(|v| {
                maps.iter()
                    .fold(Mat::zeros(field, y.dim(v), 0), |acc, f| acc.hstack(f.map(v)))
            })
            .collect();
        Ok(Approximation {
            morphism: Morphism::new_unchecked(&middle, y, vertex_maps),
            multiplicities: chosen.iter().map(Vec::len).collect(),
            generators: gens.iter().map(|&j| self.modules[j].clone()).collect(),
        })
    }

    /// `0 → A → T_1 → … → T_r → 0` by iterated left approximations, or
    /// `None` if some approximation is not injective or `r` would exceed `n + 1`.
    pub fn coresolution(&mut self, ids: &[usize]) -> Result<Option<Coresolution>> {
        let a = Representation::regular(&self.algebra);
        let mut cur = a.clone();
        let mut terms = Vec::new();
        let mut maps: Vec<Morphism> = Vec::new();
        let mut last_proj: Option<Morphism> = None;
        for _ in 0..=self.algebra.num_vertices() {
            let approx = self.left_approximation(&cur, None, ids)?;
            if !approx.morphism.is_injective() {
                return Ok(None);
            }
            let step = match &last_proj {
                None => approx.morphism.clone(),
                Some(p) => approx.morphism.after(p),
            };
            maps.push(step);
            let (c, proj) = cokernel(&approx.morphism);
            terms.push(approx);
            if c.is_zero() {
                return Ok(Some(Coresolution { module: a, terms, maps }));
            }
            cur = c;
            last_proj = Some(proj);
        }
        Ok(None)
    }

    /// The tilting axioms for a list of summand ids.
    pub fn tilting_verdict(&mut self, ids: &[usize]) -> TiltingVerdict {
        let mut key = ids.to_vec();
        key.sort_unstable();
        if let Some(v) = self.verdicts.get(&key) {
            return v.clone();
        }
        let v = self.compute_verdict(&key);
        self.verdicts.insert(key, v.clone());
        v
    }

    fn compute_verdict(&mut self, ids: &[usize]) -> TiltingVerdict {
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return TiltingVerdict::No("not basic: repeated summand".into());
        }
        let n = self.algebra.num_vertices();
        if ids.len() != n {
            return TiltingVerdict::No(format!("{} summands, expected {n}", ids.len()));
        }
        for &a in ids {
            if let Err(Error::ExceedsCap(c)) = self.pd(a) {
                return TiltingVerdict::ExceedsCap(c);
            }
        }
        match self.is_selforthogonal(ids) {
            Ok(true) => {}
            Ok(false) => return TiltingVerdict::No("not selforthogonal".into()),
            Err(Error::ExceedsCap(c)) => return TiltingVerdict::ExceedsCap(c),
            Err(e) => return TiltingVerdict::No(e.to_string()),
        }
        match self.coresolution(ids) {
            Ok(Some(_)) => TiltingVerdict::Yes,
            Ok(None) => TiltingVerdict::No("no finite coresolution of A in add(T)".into()),
            Err(e) => TiltingVerdict::No(e.to_string()),
        }
    }

    fn accept(&mut self, ids: &[usize], added: usize, rest: &[usize], split: bool) -> Result<bool> {
        let in_add = rest.contains(&added);
        if in_add != split {
            self.gate_disagreements += 1;
            log::warn!(
                "mutation gates disagree: new summand in add(rest) = {in_add}, sequence splits = {split}"
            );
        }
        if in_add || split {
            return Ok(false);
        }
        match self.tilting_verdict(ids) {
            TiltingVerdict::Yes => Ok(true),
            TiltingVerdict::No(_) => Ok(false),
            TiltingVerdict::ExceedsCap(c) => Err(Error::ExceedsCap(c)),
        }
    }

    /// Exchange summand `i` through its left `add(T̄)`-approximation.
    pub fn mutate_left(&mut self, ids: &[usize], i: usize) -> Result<Option<Mutation>> {
        let x = ids[i];
        let rest: Vec<usize> = ids.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
        let xm = self.modules[x].clone();
        let approx = self.left_approximation(&xm, Some(x), &rest)?;
        let u = approx.morphism.clone();
        if !u.is_injective() {
            return Ok(None);
        }
        let (y, v) = cokernel(&u);
        if y.is_zero() || !is_indecomposable(&y)? {
            return Ok(None);
        }
        let added = self.intern(&y)?;
        let split = has_retraction(&u)?;
        let mut new_ids = ids.to_vec();
        new_ids[i] = added;
        if !self.accept(&new_ids, added, &rest, split)? {
            return Ok(None);
        }
        Ok(Some(Mutation {
            ids: new_ids,
            index: i,
            removed: x,
            added,
            sequence: ExchangeSequence {
                left: u,
                right: v,
                multiplicities: approx.multiplicities,
                generators: rest,
            },
        }))
    }

    /// Exchange summand `i` through the kernel of its right `add(T̄)`-approximation.
    pub fn mutate_right(&mut self, ids: &[usize], i: usize) -> Result<Option<Mutation>> {
        let x = ids[i];
        let rest: Vec<usize> = ids.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
        let xm = self.modules[x].clone();
        let approx = self.right_approximation(&xm, Some(x), &rest)?;
        let v = approx.morphism.clone();
        if !v.is_surjective() {
            return Ok(None);
        }
        let (y, u) = kernel(&v);
        if y.is_zero() || !is_indecomposable(&y)? {
            return Ok(None);
        }
        let added = self.intern(&y)?;
        let split = has_section(&v)?;
        let mut new_ids = ids.to_vec();
        new_ids[i] = added;
        if !self.accept(&new_ids, added, &rest, split)? {
            return Ok(None);
        }
        Ok(Some(Mutation {
            ids: new_ids,
            index: i,
            removed: x,
            added,
            sequence: ExchangeSequence {
                left: u,
                right: v,
                multiplicities: approx.multiplicities,
                generators: rest,
            },
        }))
    }
}

/// Indices of candidates that extend `span` to a basis of the span of
/// everything, chosen greedily in order.
fn complement(field: crate::exactla::Field, span: Vec<Vec<Scalar>>, cands: &[Vec<Scalar>]) -> Vec<usize> {
    let Some(len) = cands.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rows = span;
    let mut rank = if rows.is_empty() {
        0
    } else {
        Mat::from_rows(field, rows.clone()).unwrap().rank()
    };
    let mut picked = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        if len == 0 {
            break;
        }
        rows.push(c.clone());
        let r = Mat::from_rows(field, rows.clone()).unwrap().rank();
        if r > rank {
            rank = r;
            picked.push(i);
        } else {
            rows.pop();
        }
    }
    picked
}
