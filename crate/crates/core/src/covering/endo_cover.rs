use crate::covering::functors::{homogeneous_components, FirstKindWitness};
use crate::covering::{build_covering, g_twist, verify_covering_functor, CoveringData, CoveringReport, GroupElement, Grading};
use crate::endo::{endo_presentation, present, EndoPresentation, GradedChoice};
use crate::error::{Error, Result};
use crate::repmod::{endo_structure, hom_dim, HomSpace, Morphism};
use crate::tilting::TiltingCandidate;

/// A covering of `B = End_A(T)` induced by lifts of the summands of `T`.
#[derive(Clone, Debug)]
pub struct EndoCovering {
    /// `B` presented by arrows that are homogeneous for the induced grading.
    pub endo: EndoPresentation,
    /// Degree `g` of each arrow `T_i → T_j`, meaning it lifts to `^g T̂_i → T̂_j`.
    pub degrees: Vec<GroupElement>,
    pub covering: CoveringData,
    pub report: CoveringReport,
}

struct Lifts<'a> {
    cd: &'a CoveringData,
    witnesses: &'a [FirstKindWitness],
    inverses: Vec<Morphism>,
}

impl Lifts<'_> {
    /// `λ_j⁻¹ ∘ φ ∘ λ_i : F_λ T̂_i → F_λ T̂_j`.
    fn pulled(&self, i: usize, j: usize, phi: &Morphism) -> Morphism {
        self.inverses[j].after(&phi.after(&self.witnesses[i].iso))
    }

    fn components(&self, i: usize, j: usize, phi: &Morphism) -> Result<Vec<(usize, Morphism)>> {
        let psi = self.pulled(i, j, phi);
        let comps = homogeneous_components(self.cd, &self.witnesses[i].lift, &self.witnesses[j].lift, &psi)?;
        Ok(comps
            .into_iter()
            .map(|c| {
                let back = self.witnesses[j].iso.after(&c.block.after(&self.inverses[i]));
                (self.cd.group().index(&c.degree), back)
            })
            .collect())
    }
}

/// Builds the covering of `End_A(T)` whose vertex `(i, g)` stands for
/// `^g T̂_i`, where `witnesses[i]` lifts the summand `T_i`. The result is
/// checked against the covering axioms and against `Hom(^g T̂_i, ^h T̂_j)`.
pub fn endo_covering(cd: &CoveringData, t: &TiltingCandidate, witnesses: &[FirstKindWitness]) -> Result<EndoCovering> {
    let n = t.len();
    if witnesses.len() != n {
        return Err(Error::InvalidModule(format!("{} witnesses for {n} summands", witnesses.len())));
    }
    let inverses = witnesses
        .iter()
        .map(|w| {
            w.iso
                .inverse()
                .ok_or_else(|| Error::ValidationFailed("witness morphism is not invertible".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    for (w, s) in witnesses.iter().zip(t.summands()) {
        if !w.iso.target().same_matrices(s) {
            return Err(Error::ValidationFailed("witness does not end at its summand".into()));
        }
    }
    let lifts = Lifts { cd, witnesses, inverses };
    let summands = t.summands();

    let mut rad: Vec<Vec<Vec<Morphism>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        let end = endo_structure(&summands[i])?;
        for j in 0..n {
            let basis = if i == j { end.radical_basis() } else { HomSpace::new(&summands[i], &summands[j])?.basis().to_vec() };
            for phi in &basis {
                for (_, part) in lifts.components(i, j, phi)? {
                    if i == j && !end.in_radical(&part) {
                        return Err(Error::ValidationFailed(format!(
                            "a homogeneous part of a radical endomorphism of summand {} is invertible",
                            i + 1
                        )));
                    }
                    rad[i][j].push(part);
                }
            }
        }
    }
    let degree = |i: usize, j: usize, phi: &Morphism| -> Result<usize> {
        let comps = lifts.components(i, j, phi)?;
        match comps.as_slice() {
            [(g, _)] => Ok(*g),
            _ => Err(Error::ValidationFailed(format!(
                "morphism between summands {} and {} has {} homogeneous parts",
                i + 1,
                j + 1,
                comps.len()
            ))),
        }
    };
    let endo = present(t, Some(&GradedChoice { rad, degree: &degree }))?;

    let plain = endo_presentation(t)?;
    let count = |q: &crate::algebra::Quiver| {
        let mut c = vec![vec![0usize; n]; n];
        for a in q.arrows() {
            c[a.source][a.target] += 1;
        }
        c
    };
    if count(plain.algebra().quiver()) != count(endo.algebra().quiver()) || plain.algebra().dim() != endo.algebra().dim() {
        return Err(Error::ValidationFailed("graded presentation differs in shape from End(T)".into()));
    }

    let group = cd.group();
    let b = endo.algebra();
    let mut degrees = Vec::new();
    let mut weights = Vec::new();
    for (k, arr) in b.quiver().arrows().iter().enumerate() {
        let g = group.element(degree(arr.source, arr.target, endo.arrow_morphism(k))?);
        weights.push(group.neg(&g));
        degrees.push(g);
    }
    let grading = Grading::new(group, weights)?;
    let covering = build_covering(b, &grading, group).map_err(|e| match e {
        Error::HeterogeneousGrading(s) => Error::ValidationFailed(format!("relations of End(T) are not homogeneous: {s}")),
        other => other,
    })?;
    let report = verify_covering_functor(&covering);
    if let Some(a) = report.assertions.iter().find(|a| !a.passed) {
        return Err(Error::ValidationFailed(format!("{}: {}", a.name, a.detail)));
    }

    let order = group.order();
    let twisted = (0..n)
        .map(|i| {
            (0..order)
                .map(|g| g_twist(cd, &witnesses[i].lift, &group.element(g)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let cover = covering.cover();
    for i in 0..n {
        for j in 0..n {
            for g in 0..order {
                for h in 0..order {
                    let paths = cover.basis_between(covering.vertex(i, g), covering.vertex(j, h)).len();
                    let homs = hom_dim(&twisted[i][g], &twisted[j][h])?;
                    if paths != homs {
                        return Err(Error::ValidationFailed(format!(
                            "({}, {}) to ({}, {}): {paths} paths against Hom of dimension {homs}",
                            i + 1,
                            group.format(&group.element(g)),
                            j + 1,
                            group.format(&group.element(h))
                        )));
                    }
                }
            }
        }
    }
    Ok(EndoCovering {
        endo,
        degrees,
        covering,
        report,
    })
}
