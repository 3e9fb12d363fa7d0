use serde::Serialize;

use crate::covering::{CoveringData, GroupElement};
use crate::endo::{Assertion, CheckReport};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::repmod::{find_isomorphism, is_isomorphic, split, Morphism, Representation};
use crate::tilting::{is_tilting, Session, TiltingCandidate};

fn over_cover(cd: &CoveringData, m: &Representation) -> Result<()> {
    if m.algebra().same_as(cd.cover()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

fn over_base(cd: &CoveringData, m: &Representation) -> Result<()> {
    if m.algebra().same_as(cd.base()) {
        Ok(())
    } else {
        Err(Error::AlgebraMismatch)
    }
}

/// `offsets[x][g]`: where the space at `(x, g)` starts inside `(F_λ M)(x)`.
fn fiber_offsets(cd: &CoveringData, m: &Representation) -> Vec<Vec<usize>> {
    (0..cd.base().num_vertices())
        .map(|x| {
            let mut acc = 0;
            cd.fiber(x)
                .iter()
                .map(|&v| {
                    let o = acc;
                    acc += m.dim(v);
                    o
                })
                .collect()
        })
        .collect()
}

/// `(F_λ M)(x) = ⊕_g M(x, g)`, with the block of arrow `(a, g)` placed
/// between the summands of its endpoints.
pub fn pushdown(cd: &CoveringData, m: &Representation) -> Result<Representation> {
    over_cover(cd, m)?;
    let base = cd.base();
    let field = base.field();
    let offs = fiber_offsets(cd, m);
    let dims: Vec<usize> = (0..base.num_vertices()).map(|x| cd.fiber(x).iter().map(|&v| m.dim(v)).sum()).collect();
    let cq = cd.cover().quiver();
    let maps = base
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let mut mat = Mat::zeros(field, dims[arr.target], dims[arr.source]);
            for g in 0..cd.group().order() {
                let al = cd.arrow(a, g);
                let c = cq.arrow(al);
                mat.paste(
                    offs[arr.target][cd.vertex_sheet(c.target)],
                    offs[arr.source][cd.vertex_sheet(c.source)],
                    m.map(al),
                );
            }
            mat
        })
        .collect();
    Representation::new(base, dims, maps)
}

pub fn pushdown_morphism(cd: &CoveringData, f: &Morphism) -> Result<Morphism> {
    let (s, t) = (pushdown(cd, f.source())?, pushdown(cd, f.target())?);
    let (os, ot) = (fiber_offsets(cd, f.source()), fiber_offsets(cd, f.target()));
    let maps = (0..cd.base().num_vertices())
        .map(|x| {
            let mut mat = Mat::zeros(s.field(), t.dim(x), s.dim(x));
            for (g, &v) in cd.fiber(x).iter().enumerate() {
                mat.paste(ot[x][g], os[x][g], f.map(v));
            }
            mat
        })
        .collect();
    Morphism::new(&s, &t, maps)
}

/// `F.M = M ∘ F`.
pub fn pullup(cd: &CoveringData, m: &Representation) -> Result<Representation> {
    over_base(cd, m)?;
    let cover = cd.cover();
    let dims = (0..cover.num_vertices()).map(|v| m.dim(cd.vertex_fiber(v))).collect();
    let maps = (0..cover.quiver().num_arrows()).map(|al| m.map(cd.arrow_fiber(al)).clone()).collect();
    Representation::new(cover, dims, maps)
}

pub fn pullup_morphism(cd: &CoveringData, f: &Morphism) -> Result<Morphism> {
    let (s, t) = (pullup(cd, f.source())?, pullup(cd, f.target())?);
    let maps = (0..cd.cover().num_vertices()).map(|v| f.map(cd.vertex_fiber(v)).clone()).collect();
    Morphism::new(&s, &t, maps)
}

/// `^g M = M ∘ g⁻¹`.
pub fn g_twist(cd: &CoveringData, m: &Representation, g: &GroupElement) -> Result<Representation> {
    over_cover(cd, m)?;
    twist_index(cd, m, cd.group().index(g))
}

fn twist_index(cd: &CoveringData, m: &Representation, g: usize) -> Result<Representation> {
    let inv = cd.group().neg_index(g);
    let cover = cd.cover();
    let dims = (0..cover.num_vertices()).map(|v| m.dim(cd.act_vertex(inv, v))).collect();
    let maps = (0..cover.quiver().num_arrows()).map(|al| m.map(cd.act_arrow(inv, al)).clone()).collect();
    Representation::new(cover, dims, maps)
}

/// An indecomposable cover module `lift` and an isomorphism `F_λ(lift) → M`.
#[derive(Clone, Debug)]
pub struct FirstKindWitness {
    pub lift: Representation,
    pub iso: Morphism,
}

/// The twist of `m` with lexicographically largest dimension vector.
fn canonical_twist(cd: &CoveringData, m: &Representation) -> Result<Representation> {
    let mut best = m.clone();
    for g in 1..cd.group().order() {
        let t = twist_index(cd, m, g)?;
        if t.dims() > best.dims() {
            best = t;
        }
    }
    Ok(best)
}

/// Searches the summands of `F.M` for one pushing down to `M`.
pub fn first_kind_test(cd: &CoveringData, m: &Representation, seed: u64) -> Result<Option<FirstKindWitness>> {
    let up = pullup(cd, m)?;
    for s in split(&up)? {
        let pd = pushdown(cd, &s.module)?;
        if pd.dims() != m.dims() || !is_isomorphic(&pd, m, seed) {
            continue;
        }
        let lift = canonical_twist(cd, &s.module)?;
        let pd = pushdown(cd, &lift)?;
        let iso = find_isomorphism(&pd, m, seed)
            .ok_or_else(|| Error::AssertionFailed("twisted lift no longer pushes down to the module".into()))?;
        return Ok(Some(FirstKindWitness { lift, iso }));
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct FirstKindReport {
    pub summands: Vec<Representation>,
    pub witnesses: Vec<Option<FirstKindWitness>>,
}

impl FirstKindReport {
    pub fn is_first_kind(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }
}

pub fn summands_first_kind(cd: &CoveringData, summands: &[Representation], seed: u64) -> Result<FirstKindReport> {
    let witnesses = summands
        .iter()
        .map(|s| first_kind_test(cd, s, seed))
        .collect::<Result<Vec<_>>>()?;
    Ok(FirstKindReport {
        summands: summands.to_vec(),
        witnesses,
    })
}

pub fn module_first_kind(cd: &CoveringData, m: &Representation, seed: u64) -> Result<FirstKindReport> {
    let parts: Vec<Representation> = split(m)?.into_iter().map(|s| s.module).collect();
    summands_first_kind(cd, &parts, seed)
}

/// The degree-`g` part of `f : F_λ M̂ → F_λ N̂`, as a cover morphism
/// `^g M̂ → N̂` and as the matching blocks of `f`.
#[derive(Clone, Debug, Serialize)]
pub struct HomogeneousComponent {
    pub degree: GroupElement,
    #[serde(skip)]
    pub hat: Morphism,
    #[serde(skip)]
    pub block: Morphism,
}

/// Splits `f` into its nonzero homogeneous parts. `f` must be a morphism
/// between the push-downs of `m_hat` and `n_hat` as built by [`pushdown`].
pub fn homogeneous_components(
    cd: &CoveringData,
    m_hat: &Representation,
    n_hat: &Representation,
    f: &Morphism,
) -> Result<Vec<HomogeneousComponent>> {
    over_cover(cd, m_hat)?;
    over_cover(cd, n_hat)?;
    let (om, on) = (fiber_offsets(cd, m_hat), fiber_offsets(cd, n_hat));
    let base = cd.base();
    for x in 0..base.num_vertices() {
        let (r, c) = (
            cd.fiber(x).iter().map(|&v| n_hat.dim(v)).sum::<usize>(),
            cd.fiber(x).iter().map(|&v| m_hat.dim(v)).sum::<usize>(),
        );
        if f.map(x).shape() != (r, c) {
            return Err(Error::DimensionMismatch("morphism does not match the push-downs".into()));
        }
    }
    let field = base.field();
    let mut out = Vec::new();
    for g in 0..cd.group().order() {
        let inv = cd.group().neg_index(g);
        let twisted = twist_index(cd, m_hat, g)?;
        let mut hat_maps = Vec::with_capacity(cd.cover().num_vertices());
        for v in 0..cd.cover().num_vertices() {
            let u = cd.act_vertex(inv, v);
            let x = cd.vertex_fiber(v);
            hat_maps.push(f.map(x).block(
                on[x][cd.vertex_sheet(v)],
                om[x][cd.vertex_sheet(u)],
                n_hat.dim(v),
                m_hat.dim(u),
            ));
        }
        if hat_maps.iter().all(Mat::is_zero) {
            continue;
        }
        let block_maps = (0..base.num_vertices())
            .map(|x| {
                let mut mat = Mat::zeros(field, f.map(x).rows(), f.map(x).cols());
                for &v in cd.fiber(x) {
                    let u = cd.act_vertex(inv, v);
                    mat.paste(on[x][cd.vertex_sheet(v)], om[x][cd.vertex_sheet(u)], &hat_maps[v]);
                }
                mat
            })
            .collect();
        out.push(HomogeneousComponent {
            degree: cd.group().element(g),
            hat: Morphism::new(&twisted, n_hat, hat_maps)?,
            block: Morphism::new(f.source(), f.target(), block_maps)?,
        });
    }
    Ok(out)
}

/// Checks that `F.T` is a basic tilting cover module with `n·|G|` summands.
pub fn pullup_tilting_check(cd: &CoveringData, t: &TiltingCandidate, pd_cap: Option<usize>, seed: u64) -> Result<CheckReport> {
    let mut assertions = Vec::new();
    let verdict = is_tilting(t, pd_cap);
    assertions.push(Assertion::new("T tilting over A", verdict.is_yes(), format!("{verdict:?}")));
    let fk = summands_first_kind(cd, t.summands(), seed)?;
    let missing: Vec<String> = fk
        .summands
        .iter()
        .zip(&fk.witnesses)
        .filter(|(_, w)| w.is_none())
        .map(|(s, _)| s.dim_vector_string())
        .collect();
    assertions.push(Assertion::new("T of the first kind", missing.is_empty(), missing.join(", ")));
    let mut parts = Vec::new();
    for s in t.summands() {
        parts.extend(split(&pullup(cd, s)?)?.into_iter().map(|p| p.module));
    }
    let expected = t.len() * cd.group().order();
    assertions.push(Assertion::new(
        "n·|G| indecomposable summands",
        parts.len() == expected,
        format!("{} summands, expected {expected}", parts.len()),
    ));
    let mut session = Session::new(cd.cover(), pd_cap, seed);
    let ids = session.intern_all(&parts)?;
    let mut distinct = ids.clone();
    distinct.sort_unstable();
    distinct.dedup();
    assertions.push(Assertion::new(
        "F.T basic",
        distinct.len() == ids.len(),
        format!("{} isoclasses among {} summands", distinct.len(), ids.len()),
    ));
    let verdict = session.tilting_verdict(&ids);
    assertions.push(Assertion::new("F.T tilting over the cover", verdict.is_yes(), format!("{verdict:?}")));
    Ok(CheckReport {
        check: "pullup-tilting".into(),
        checked: parts.len(),
        assertions,
    })
}
