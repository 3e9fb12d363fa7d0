//! Text formats for algebras, modules and gradings (TOML documents).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraPresentation, Arrow, Path, Quiver, Relation};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::repmod::Representation;
use crate::Algebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpecFile {
    /// `"Q"` or `"Fp"`.
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_cap: Option<usize>,
    #[serde(default)]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default)]
    pub relations: Vec<RelationSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationSpec {
    pub terms: Vec<TermSpec>,
}

/// `coeff` is `"p/q"`; `path` lists arrow ids in composition order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coeff: String,
    pub path: Vec<String>,
}

pub fn field_from_spec(name: &str, prime: Option<u64>) -> Result<Field> {
    match (name, prime) {
        ("Q", None) => Ok(Field::Rational),
        ("Fp", Some(p)) => Field::prime(p),
        ("Q", Some(_)) => Err(Error::Parse("field Q takes no prime".into())),
        ("Fp", None) => Err(Error::Parse("field Fp needs a prime".into())),
        (other, _) => Err(Error::Parse(format!("unknown field {other:?}"))),
    }
}

fn field_to_spec(f: Field) -> (String, Option<u64>) {
    match f {
        Field::Rational => ("Q".into(), None),
        Field::Prime(p) => ("Fp".into(), Some(p)),
    }
}

impl AlgebraSpecFile {
    pub fn parse(text: &str) -> Result<AlgebraSpecFile> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("algebra spec serializes")
    }

    pub fn from_presentation(a: &AlgebraPresentation) -> AlgebraSpecFile {
        let q = a.quiver();
        let (field, prime) = field_to_spec(a.field());
        AlgebraSpecFile {
            field,
            prime,
            vertices: q.vertices().to_vec(),
            length_cap: Some(a.length_cap()),
            arrows: q
                .arrows()
                .iter()
                .map(|arr| ArrowSpec {
                    id: arr.name.clone(),
                    source: q.vertex_name(arr.source).to_string(),
                    target: q.vertex_name(arr.target).to_string(),
                })
                .collect(),
            relations: a
                .relations()
                .iter()
                .map(|r| RelationSpec {
                    terms: r
                        .terms()
                        .iter()
                        .map(|(c, p)| TermSpec {
                            coeff: c.to_string(),
                            path: p.arrows().iter().map(|&i| q.arrow(i).name.clone()).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn quiver(&self) -> Result<Quiver> {
        let find = |name: &str| {
            self.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::MalformedQuiver(format!("unknown vertex {name:?}")))
        };
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                Ok(Arrow {
                    name: a.id.clone(),
                    source: find(&a.source)?,
                    target: find(&a.target)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(self.vertices.clone(), arrows)
    }

    pub fn to_presentation(&self) -> Result<AlgebraPresentation> {
        let field = field_from_spec(&self.field, self.prime)?;
        let q = self.quiver()?;
        let mut rels = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.terms.len());
            for t in &r.terms {
                let names: Vec<&str> = t.path.iter().map(String::as_str).collect();
                let p: Path = q.path_by_names(&names).map_err(|e| Error::MalformedRelation(e.to_string()))?;
                terms.push((field.parse(&t.coeff)?, p));
            }
            rels.push(Relation::new(terms)?);
        }
        AlgebraPresentation::build(field, q, rels, self.length_cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecFile {
    /// Free-form reference to the algebra (a file path or `fixture:<name>`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<String>,
    /// Vertex id to dimension; missing vertices have dimension 0.
    pub dims: BTreeMap<String, usize>,
    /// Arrows not listed act by zero.
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub arrow: String,
    pub rows: Vec<Vec<String>>,
}

impl ModuleSpecFile {
    pub fn parse(text: &str) -> Result<ModuleSpecFile> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("module spec serializes")
    }

    pub fn from_representation(m: &Representation, algebra_ref: Option<String>) -> ModuleSpecFile {
        let q = m.algebra().quiver();
        let dims = q
            .vertices()
            .iter()
            .zip(m.dims())
            .filter(|(_, &d)| d > 0)
            .map(|(v, &d)| (v.clone(), d))
            .collect();
        let maps = q
            .arrows()
            .iter()
            .zip(m.maps())
            .filter(|(_, mat)| !mat.is_zero())
            .map(|(arr, mat)| MapSpec {
                arrow: arr.name.clone(),
                rows: (0..mat.rows()).map(|r| mat.row(r).iter().map(|s| s.to_string()).collect()).collect(),
            })
            .collect();
        ModuleSpecFile {
            algebra: algebra_ref,
            dims,
            maps,
        }
    }

    pub fn to_representation(&self, algebra: &Algebra) -> Result<Representation> {
        let q = algebra.quiver();
        let field = algebra.field();
        let mut dims = vec![0; q.num_vertices()];
        for (v, &d) in &self.dims {
            let x = q
                .vertex_index(v)
                .ok_or_else(|| Error::InvalidModule(format!("unknown vertex {v:?}")))?;
            dims[x] = d;
        }
        let mut maps: Vec<Mat> = q
            .arrows()
            .iter()
            .map(|a| Mat::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        let mut seen = vec![false; q.num_arrows()];
        for spec in &self.maps {
            let a = q
                .arrow_index(&spec.arrow)
                .ok_or_else(|| Error::InvalidModule(format!("unknown arrow {:?}", spec.arrow)))?;
            if seen[a] {
                return Err(Error::InvalidModule(format!("arrow {:?} given twice", spec.arrow)));
            }
            seen[a] = true;
            let rows = spec
                .rows
                .iter()
                .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let arr = q.arrow(a);
            let (r, c) = (dims[arr.target], dims[arr.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::InvalidModule(format!(
                    "matrix for {:?} must be {r}x{c}",
                    spec.arrow
                )));
            }
            maps[a] = if r == 0 { Mat::zeros(field, 0, c) } else { Mat::from_rows(field, rows)? };
        }
        Representation::new(algebra, dims, maps)
    }
}

/// Arrow weights in a finite abelian group `Z/m_1 × … × Z/m_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingSpecFile {
    pub group: Vec<u64>,
    /// Arrow id to residues; unlisted arrows have weight zero.
    #[serde(default)]
    pub weights: BTreeMap<String, Vec<i64>>,
}

impl GradingSpecFile {
    pub fn parse(text: &str) -> Result<GradingSpecFile> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("grading spec serializes")
    }
}
